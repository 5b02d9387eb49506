# graphons/__init__.py
"""
Step K-Graphons

Equal-measure step functions whose values are distributions on a decoration
space, their moment representations, homomorphism densities, the stepping
(averaging) operator and reconstruction from moment sequences.

Key components:
- Graph embedding W_G and moment components W_f
- t(F, W) and t(F, s) for moment function sequences
- Stepping over partitions of the steps
- Reconstruction where the moment problem is a well-posed linear system
"""

__version__ = "0.1.0"
