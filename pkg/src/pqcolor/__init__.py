"""Explicit generalized Ramsey (5,5)-colorings: construction, exhaustive
verification, and the small-case enumeration behind it."""

__version__ = "0.1.0"
