"""Driven Markovian master equations for two-level systems built on Lewis-Riesenfeld invariants."""

__version__ = "0.1.0"
