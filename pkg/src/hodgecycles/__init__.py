"""Exact periods, cycle classes and Hodge-locus tangent spaces of
complete-intersection algebraic cycles in smooth projective hypersurfaces."""

__version__ = "0.1.0"
