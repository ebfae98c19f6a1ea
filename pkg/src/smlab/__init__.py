"""Finite commutative algebra engine and checker for semi n-submodule results."""
