"""
Test suite for cyclic-weights.

This package contains:
- Unit tests for the algebra layer (gf, quadform, specdist)
- Unit tests for the codes layer (trace codes, enumeration engines, closed forms)
- CLI tests covering every subcommand, exit codes and output determinism
- Infrastructure tests for logging and partitioned sweeps
"""
