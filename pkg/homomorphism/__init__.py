# homomorphism/__init__.py
"""
Homomorphism Numbers and Densities

Map weights, homomorphism numbers hom(F, G), densities t(F, G), their Monte
Carlo estimates, and the evaluation functional L that links densities to the
sampling process.
"""

__version__ = "0.1.0"
