"""Push-button command line interface.

    dasqa --file-path circuit.qasm --config-file-path config.yml \
          [--out-dir out] [--baseline coupling.json] [--verbose]

Runs the whole flow and writes architecture.json, layout.json, layout.svg
and report.json into the output directory. Exit status 0 on success; stage
failures print a ``[stage] message`` diagnostic and exit 1.
"""
from __future__ import annotations

import argparse
import sys

from .errors import DasqaError
from .pipeline import StageFailure, run_flow


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dasqa",
        description=(
            "Generate an application-specific superconducting quantum "
            "architecture and physical layout for a circuit."
        ),
    )
    parser.add_argument(
        "--file-path", required=True, help="input quantum circuit (OpenQASM 2.0)"
    )
    parser.add_argument(
        "--config-file-path", required=True, help="design configuration (YAML)"
    )
    parser.add_argument(
        "--out-dir", default="out", help="output directory (default: ./out)"
    )
    parser.add_argument(
        "--baseline",
        default=None,
        metavar="COUPLING_JSON",
        help="also score the circuit on this coupling graph for comparison",
    )
    parser.add_argument("--verbose", action="store_true", help="print a flow summary")
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and usage errors
        return int(exc.code or 0)

    try:
        result = run_flow(
            args.file_path,
            args.config_file_path,
            out_dir=args.out_dir,
            baseline_path=args.baseline,
        )
    except StageFailure as exc:
        print(f"dasqa: {exc}", file=sys.stderr)
        return 1
    except DasqaError as exc:
        print(f"dasqa: [flow] {exc}", file=sys.stderr)
        return 1

    if args.verbose:
        arch = result.architecture
        print(f"architecture: {arch.num_qubits} qubits, {len(arch.coupling.edges)} couplings")
        print(
            f"routing: {result.routing.swap_count} swap(s), depth {result.routing.routed_depth}, "
            f"equivalence={'skipped' if result.equivalence_ok is None else result.equivalence_ok}"
        )
        failures = [r for r in result.geometry_results if r.error]
        print(
            f"geometry: {len(result.geometry_results) - len(failures)} qubit(s) tuned, "
            f"{len(failures)} failed"
        )
        for path in (
            result.architecture_path,
            result.layout_path,
            result.svg_path,
            result.report_path,
        ):
            print(f"wrote {path}")
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
