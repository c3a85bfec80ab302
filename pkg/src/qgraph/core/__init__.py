"""Core algebra: GF(2) kernel, graphs, Pauli operators, graph states and invariants."""
