# graphs/__init__.py
"""
Decorated Graphs

Finite graphs whose edges (loops included) carry elements of a decoration
space, and small pattern graphs whose edges carry test functions.

Key components:
- Constructors for simple, multi-, colored, parallel and weighted graphs
- Multigraph patterns decorated by powers
- JSON wire formats for graphs and patterns
"""

__version__ = "0.1.0"
