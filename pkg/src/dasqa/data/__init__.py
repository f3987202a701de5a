"""Bundled data tables (synthetic geometry-to-frequency training set)."""
