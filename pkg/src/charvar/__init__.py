"""Type-preserving representations of the thrice-punctured projective plane.

Coordinates, triangle switches, trace formulas, component classification,
trace reduction and twist dynamics, with exact rational arithmetic wherever
the formulas are rational.
"""
__version__ = "0.1.0"
SCHEMA_VERSION = 1
