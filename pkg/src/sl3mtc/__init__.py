"""Exact modular data, fusion rules and Type-D condensation for C(sl3, k)."""

__version__ = "0.1.0"
