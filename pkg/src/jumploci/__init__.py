"""Exact computation of cohomology jump loci: flat connections, Aomoto complexes,
resonance varieties, weighted exponential tangent cones and twisted cohomology
of finitely presented groups."""

__version__ = "0.1.0"
