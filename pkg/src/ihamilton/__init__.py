"""Hamiltonicity of I-graphs through quartic quotients and good Eulerian subgraphs."""

__version__ = "0.1.0"
