# regularity/__init__.py
"""
Weak Regularity

Key components:
- Single-kernel refinement driven by cut-norm witnesses
- Simultaneous regularity for kernel families with equal-measure groups refining a base
- Regularisation of step graphons through their moment components
- Partition helpers (refine, equalize, refinement checks)
"""

__version__ = "0.1.0"
