"""Fit the geometry-to-frequency surrogate and run it in both directions.

Forward: predict a transmon's frequency from its pad geometry. Inverse:
find the pad height (gap held fixed) that hits a target frequency, then
push the solved geometries into the layout.
"""
from dasqa import (
    DesignConfig,
    build_layout,
    bundled_dataset,
    fit_model,
    generate_architecture,
    invert_for_geometry,
    optimize_layout,
    parse_qasm,
    predict_frequency,
)

data = bundled_dataset()
model = fit_model(data, degree=2)
print(f"training table: {len(data)} rows")
print(f"fitted coefficients (1, g, h, g^2, gh, h^2): {[f'{c:.3g}' for c in model.coefficients]}")
print(f"fit residual rms: {model.residual_rms_ghz:.2e} GHz")

pred = predict_frequency(model, gap_um=30.0, height_um=220.0)
print(f"\nforward: gap 30 um, height 220 um -> {pred.frequency_ghz:.4f} GHz")

target = 5.17
gap, height = invert_for_geometry(model, target, fixed_gap_um=30.0)
check = predict_frequency(model, gap, height)
print(f"inverse: {target} GHz at gap 30 um -> height {height:.2f} um "
      f"(re-predicts {check.frequency_ghz:.6f} GHz)")

SOURCE = """
OPENQASM 2.0;
include "qelib1.inc";
qreg q[5];
cx q[0],q[4];
cx q[1],q[4];
cx q[2],q[4];
cx q[3],q[4];
"""
config = DesignConfig()
qc = parse_qasm(SOURCE, name="hub_demo")
arch = generate_architecture(qc, config)
layout = build_layout(arch, config)
layout, results = optimize_layout(layout, arch.frequencies, config, model)
print("\nper-qubit geometry after optimization:")
for row in results:
    print(
        f"  {row.qubit}: target {row.target_ghz:.2f} GHz -> "
        f"gap {row.pad_gap_um:g} um, height {row.pad_height_um:.2f} um "
        f"(achieves {row.achieved_ghz:.5f} GHz)"
    )
