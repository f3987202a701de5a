"""Parse a circuit and inspect what drives the architecture: the
weighted interaction graph.

The five-qubit program below entangles q4 with everything and q0 with q1;
the pair weights are exactly the statistic the placer optimizes for.
"""
from dasqa import circuit_stats, interaction_graph, parse_qasm

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
stats = circuit_stats(qc)
print(f"circuit {qc.name!r}: {qc.num_qubits} qubits")
print(f"  gates: {stats.gate_count} total, {stats.two_qubit_count} two-qubit, depth {stats.depth}")

ig = interaction_graph(qc)
print("\ninteraction graph (pair -> #two-qubit gates):")
for (a, b), weight in sorted(ig.weights.items()):
    print(f"  q{a} -- q{b}: {weight}")

print("\nweighted degrees (who talks the most):")
for q in sorted(range(qc.num_qubits), key=ig.weighted_degree, reverse=True):
    print(f"  q{q}: {ig.weighted_degree(q)}")
