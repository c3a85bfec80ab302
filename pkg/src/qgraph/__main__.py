"""Entry point for running qgraph as a module.

This allows the package to be executed with: python -m qgraph
"""

from qgraph.cli import cli

if __name__ == "__main__":
    cli()
