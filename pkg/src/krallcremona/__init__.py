"""Cremona maps from Krall-Jacobi orthogonal polynomials, computed exactly."""

__version__ = "0.1.0"
