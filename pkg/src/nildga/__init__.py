"""Exact invariants, differential Gerstenhaber algebras and mirror checks
for six-dimensional nilpotent Lie algebras."""

__version__ = "0.1.0"
