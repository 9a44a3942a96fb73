"""Finite-field arithmetic and quadratic forms over F_p."""
