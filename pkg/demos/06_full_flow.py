"""Push-button run of the whole design flow, same as the `dasqa` CLI.

Writes architecture.json, layout.json, layout.svg and report.json into
demo_out/flow/. Repeated runs produce byte-identical files.
"""
import json
from pathlib import Path

from dasqa import run_flow

HERE = Path(__file__).parent
CIRCUIT = HERE.parent / "tests" / "data" / "five_qubit_app.qasm"
CONFIG = HERE.parent / "tests" / "data" / "config.yml"
BASELINE = HERE.parent / "tests" / "data" / "baseline_t.json"

result = run_flow(CIRCUIT, CONFIG, out_dir="demo_out/flow", baseline_path=BASELINE)

print(f"swap count on generated architecture: {result.routing.swap_count}")
print(f"routed depth: {result.routing.routed_depth}")
print(f"equivalence check: {result.equivalence_ok}")

report = json.loads(result.report_path.read_text())
base = report["baseline"]
print(f"baseline ({base['source']}): {base['swap_count']} swaps, depth {base['routed_depth']}")

for path in (result.architecture_path, result.layout_path, result.svg_path, result.report_path):
    print(f"wrote {path}")
