# convergence/__init__.py
"""
Convergence Diagnostics

Empirical checks that a sequence of decorated graphs or step graphons
converges, and the finite stages of the limit construction.

Key components:
- Pattern catalogs over a truncated test family
- Density traces, Cauchy reports and sampling consistency reports
- W-random graphs from a step graphon
- Refinement stages and the counting-lemma check
"""

__version__ = "0.1.0"
