# cutnorm/__init__.py
"""
Cut Norm

Rectangle norm of step kernels.

Key components:
- Exact value by enumerating one side of the rectangle
- Alternating greedy lower bound with random restarts
- The ±1 bilinear relaxation, within a factor 4 of the cut norm
"""

__version__ = "0.1.0"
