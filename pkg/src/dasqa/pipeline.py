"""Two-phase design flow: architecture generation, then physical design.

``run_flow`` wires the stages together: parse the circuit, generate the
architecture, score it with the router (plus a statevector equivalence check
at desk scale), map it to a physical layout, fit the geometry surrogate and
optimize the transmon geometries, then emit ``architecture.json``,
``layout.json``, ``layout.svg`` and ``report.json``. Outputs are
deterministic: fixed inputs give byte-identical files.

The stages are swappable through :class:`StageInterfaces`, so alternative
generators, placers or optimizers can be dropped in without touching the
flow itself.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import archgen, geomopt, router
from .archgen import Architecture, CouplingGraph, load_coupling
from .circuit import InteractionGraph, QuantumCircuit, circuit_stats
from .config import DesignConfig, load_config
from .errors import DasqaError, SimulationLimitError
from .layout import LayoutDocument, build_layout
from .qasm import parse_qasm_file
from .svg import render_svg

ArchitectureGenerator = Callable[[QuantumCircuit, DesignConfig], Architecture]
QubitPlacer = Callable[[InteractionGraph, DesignConfig], np.ndarray]
LayoutOptimizer = Callable[
    [LayoutDocument, np.ndarray, DesignConfig],
    tuple[LayoutDocument, list[geomopt.QubitGeometryResult]],
]


def _default_layout_optimizer(
    layout: LayoutDocument, frequencies: np.ndarray, config: DesignConfig
) -> tuple[LayoutDocument, list[geomopt.QubitGeometryResult]]:
    if config.geometry.dataset_path is not None:
        data = geomopt.load_dataset(config.geometry.dataset_path)
    else:
        data = geomopt.bundled_dataset()
    model = geomopt.fit_model(data, config.geometry.poly_degree)
    return geomopt.optimize_layout(layout, frequencies, config, model)


@dataclass
class StageInterfaces:
    """Pluggable stage implementations, defaulting to the bundled ones."""

    architecture_generator: ArchitectureGenerator = archgen.generate_architecture
    qubit_placer: QubitPlacer = archgen.place_qubits
    layout_optimizer: LayoutOptimizer = field(
        default=_default_layout_optimizer
    )


@dataclass(frozen=True)
class FlowResult:
    architecture: Architecture
    routing: router.ArchitectureScore
    equivalence_ok: bool | None  # None when above the simulation guard
    geometry_results: list[geomopt.QubitGeometryResult]
    architecture_path: Path
    layout_path: Path
    svg_path: Path
    report_path: Path


class StageFailure(DasqaError):
    """Stage-tagged wrapper so callers can report which phase failed."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")


def _run_stage(stage: str, fn, *args):
    try:
        return fn(*args)
    except DasqaError as exc:
        raise StageFailure(stage, exc) from exc


def _jsonable(value):
    if isinstance(value, (np.floating, float)):
        return float(f"{float(value):.9g}")
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


def build_report(
    qc: QuantumCircuit,
    arch: Architecture,
    routed: router.RoutedCircuit,
    equivalence_ok: bool | None,
    geometry_results: list[geomopt.QubitGeometryResult],
    fit_summary: dict | None = None,
    baseline: dict | None = None,
) -> dict:
    stats = circuit_stats(qc)
    report = {
        "circuit": {
            "name": qc.name,
            "num_qubits": qc.num_qubits,
            "gate_count": stats.gate_count,
            "two_qubit_count": stats.two_qubit_count,
            "depth": stats.depth,
        },
        "architecture": {
            "num_qubits": arch.num_qubits,
            "grid": list(arch.layout.shape),
            "edges": [list(e) for e in arch.coupling.sorted_edges()],
            "frequencies_ghz": [_jsonable(f) for f in arch.frequencies],
        },
        "routing": {
            "swap_count": routed.swap_count,
            "routed_depth": routed.depth,
            "initial_mapping": list(routed.initial_mapping.log_to_phys),
            "final_mapping": list(routed.final_mapping.log_to_phys),
            "equivalence_checked": equivalence_ok is not None,
            "equivalence_ok": equivalence_ok,
        },
        "geometry": {
            "qubits": [
                {
                    "name": r.qubit,
                    "target_ghz": _jsonable(r.target_ghz),
                    "achieved_ghz": _jsonable(r.achieved_ghz) if r.achieved_ghz is not None else None,
                    "pad_gap_um": _jsonable(r.pad_gap_um) if r.pad_gap_um is not None else None,
                    "pad_height_um": _jsonable(r.pad_height_um) if r.pad_height_um is not None else None,
                    "error": r.error,
                }
                for r in geometry_results
            ],
        },
    }
    if fit_summary is not None:
        report["geometry"].update(fit_summary)
    if baseline is not None:
        report["baseline"] = baseline
    return report


def _write_atomic(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_flow(
    circuit_path: str | Path,
    config_path: str | Path,
    out_dir: str | Path = "out",
    baseline_path: str | Path | None = None,
    stages: StageInterfaces | None = None,
) -> FlowResult:
    """Execute the full flow and write the four output files.

    All computation happens before any file is written; each file is then
    written to a temp name and renamed, so a failed run leaves no partial
    outputs behind.
    """
    stages = stages or StageInterfaces()
    config = _run_stage("config", load_config, config_path)
    qc = _run_stage("parse", parse_qasm_file, str(circuit_path))
    arch = _run_stage("architecture", stages.architecture_generator, qc, config)

    routed = _run_stage("routing", router.route, qc, arch)
    _run_stage("routing", router.validate_routing, routed, arch)
    if max(qc.num_qubits, arch.num_qubits) <= router.SIM_MAX_QUBITS:
        equivalence_ok = _run_stage("routing", router.check_equivalence, qc, routed)
    else:
        equivalence_ok = None
    score = router.ArchitectureScore(routed.swap_count, routed.depth)

    layout = _run_stage("layout", build_layout, arch, config)
    layout, geometry_results = _run_stage(
        "geometry", stages.layout_optimizer, layout, arch.frequencies, config
    )
    _run_stage("layout", layout.validate)

    baseline = None
    if baseline_path is not None:
        coupling = _run_stage("baseline", load_coupling, baseline_path)
        base_score = _run_stage("baseline", router.score_architecture, qc, coupling)
        baseline = {
            "source": Path(baseline_path).name,
            "num_qubits": coupling.num_qubits,
            "edges": [list(e) for e in coupling.sorted_edges()],
            "swap_count": base_score.swap_count,
            "routed_depth": base_score.routed_depth,
        }

    report = build_report(qc, arch, routed, equivalence_ok, geometry_results, baseline=baseline)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    arch_path = out / "architecture.json"
    layout_path = out / "layout.json"
    svg_path = out / "layout.svg"
    report_path = out / "report.json"
    _write_atomic(arch_path, arch.to_json())
    _write_atomic(layout_path, layout.to_json())
    _write_atomic(svg_path, render_svg(layout))
    _write_atomic(report_path, json.dumps(report, indent=2) + "\n")

    return FlowResult(
        architecture=arch,
        routing=score,
        equivalence_ok=equivalence_ok,
        geometry_results=geometry_results,
        architecture_path=arch_path,
        layout_path=layout_path,
        svg_path=svg_path,
        report_path=report_path,
    )
