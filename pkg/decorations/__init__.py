# decorations/__init__.py
"""
Decoration Spaces

Compact spaces whose elements label the edges of decorated graphs, the test
functions evaluated on them, generating families, and finite-support
probability distributions.

Key components:
- Evaluation and integration of test functions
- Built-in generating families for finite, interval and product spaces
- JSON wire formats for spaces, functions, families and distributions
"""

__version__ = "0.1.0"
