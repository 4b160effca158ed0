"""Desk-scale verification of the Quillen equivalence between the
singular contraderived and coderived model structures on complexes over
finite-dimensional Gorenstein algebras."""

__version__ = "0.1.0"
