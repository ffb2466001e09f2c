"""Quasipositivity bounds for links via fences, HOMFLY and Kauffman polynomials."""

__version__ = "0.1.0"
