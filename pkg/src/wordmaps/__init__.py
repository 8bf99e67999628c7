"""Trace polynomials and non-surjectivity certificates for word maps on PSL2(q)."""

__version__ = "0.1.0"
