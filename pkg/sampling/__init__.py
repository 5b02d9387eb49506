# sampling/__init__.py
"""
Sampling

The k-node sampling process of a decorated graph: random ordered sets of k
distinct nodes read off pairwise, their exact and empirical laws, and
distances between those laws.
"""

__version__ = "0.1.0"
