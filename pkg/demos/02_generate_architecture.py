"""Generate an application-specific architecture for the five-qubit circuit.

The busiest qubit (q4) lands in the grid center with its partners around
it, couplings follow the circuit's interactions, and every qubit gets a
frequency that keeps neighbours and next-nearest neighbours detuned.
"""
from dasqa import DesignConfig, generate_architecture, parse_qasm

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

qc = parse_qasm(SOURCE, name="five_qubit_app")
config = DesignConfig()
arch = generate_architecture(qc, config)

print("qubit layout matrix (-1 = empty cell):")
for row in arch.layout:
    print("  " + " ".join(f"{v:3d}" for v in row))

print("\ncoupling edges:", arch.coupling.sorted_edges())
print("hub degree:", arch.coupling.degree(4))

print("\nfrequencies (GHz):")
for q, f in enumerate(arch.frequencies):
    tag = "hub" if arch.coupling.degree(q) == 4 else "leaf"
    print(f"  Q_{q}: {f:.2f}  ({tag})")

fc = config.frequency
print(
    f"\ndetuning thresholds: adjacent >= {fc.min_adjacent_detuning_ghz} GHz, "
    f"next-nearest >= {fc.min_next_detuning_ghz} GHz"
)
