"""Map the generated architecture to a physical chip sketch.

Transmons sit at the grid cell centers; each coupling edge becomes a
meandered coplanar-waveguide resonator whose arc length is cut to the
wavelength of its target frequency, and each qubit gets a readout chain
(capacitor, quarter-wave readout resonator, control port at the chip
edge). The result renders to SVG in demo_out/.
"""
from pathlib import Path

from dasqa import (
    DesignConfig,
    build_layout,
    generate_architecture,
    parse_qasm,
    polyline_length,
    render_svg,
    resonator_length,
)
from dasqa.layout import parse_quantity

SOURCE = """
OPENQASM 2.0;
include "qelib1.inc";
qreg q[5];
x q[4];
h q[3];
h q[2];
h q[1];
h q[0];
h q[4];
cx q[0],q[1];
cx q[0],q[4];
h q[0];
cx q[1],q[4];
cx q[2],q[4];
cx q[3],q[4];
cx q[0],q[4];
"""

config = DesignConfig()
qc = parse_qasm(SOURCE, name="five_qubit_app")
arch = generate_architecture(qc, config)
layout = build_layout(arch, config)

census = layout.census()
print("component census:")
for kind in ("transmon", "coupling_resonator", "readout_resonator", "capacitor", "control_line"):
    print(f"  {kind:20s} {census[kind]}")

x0, y0, w, h = layout.chip
print(f"\nchip: {w/1000:.1f} x {h/1000:.1f} mm, hub at {layout.component('Q_4').position}")

print("\ncoupling resonators (target frequency -> arc length):")
for comp in layout.by_kind("coupling_resonator"):
    f_ghz = parse_quantity(comp.options["target_frequency"])[0]
    target_mm = resonator_length(f_ghz, config.layout.epsilon_eff, config.layout.resonator_mode)
    measured_mm = polyline_length(comp.polylines[0]) / 1000.0
    print(f"  {comp.name}: {f_ghz} GHz -> {target_mm:.3f} mm (measured {measured_mm:.3f} mm)")

out = Path("demo_out")
out.mkdir(exist_ok=True)
svg_path = out / "five_qubit_app.svg"
svg_path.write_text(render_svg(layout), encoding="utf-8")
print(f"\nwrote {svg_path}")
