"""Minimal presentations of Schubert-variety ideals in the quotient ring of a box."""

__version__ = "0.1.0"
