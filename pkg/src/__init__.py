"""
Cyclic Weights - weight distributions of p-ary cyclic codes from trace forms.

This package contains:
- algebra: finite fields, quadratic forms Tr(a x^(p^k+1)), their rank/sign distribution
- codes: the trace codes C1 and C2, exact enumeration and closed-form distributions
- infrastructure: logging, configuration, worker pools and output rendering
"""

__version__ = "0.1.0"
