"""Ratliff-Rush filtrations, tangent cones, blowup algebras and graded invariants."""

__version__ = "0.1.0"
