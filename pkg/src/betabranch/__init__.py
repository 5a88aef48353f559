"""Expansions of reals in non-integer bases q in (1, 2), computed exactly."""

__version__ = "0.1.0"
