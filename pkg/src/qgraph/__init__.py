"""QGraph - Quantum codes from graph states.

A Python library and CLI that builds the super graph of a graph, searches it for
coding cliques (nonadditive codes) and coding groups (stabilizer codes), converts
between check matrices and graph form, and computes the local-unitary invariants
used to classify the resulting codes.
"""

__version__ = "0.1.0"
__author__ = "Jiahao Luo"
__email__ = "luoshitou9@gmail.com"

# Don't import CLI module during package initialization to avoid
# "found in sys.modules" warning when running as module
__all__: list[str] = []
