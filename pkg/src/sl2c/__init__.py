"""Potential algebras of non-Hermitian Hamiltonians and their numerical verification."""

__version__ = "0.1.0"
