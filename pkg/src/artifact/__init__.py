"""Teichmüller polynomials of braids from decorated folding automata."""

from .ring import LaurentPoly, PolyMatrix, char_poly, valuate, largest_root, newton_polytope, canonical_unit_form

__version__ = "0.1.0"
