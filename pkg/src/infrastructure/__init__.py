"""
Infrastructure shared by the library and the CLI.

This module contains:
- Logging: structured logging with optional Cloud Logging
- Config: RunConfig and environment/.env handling
- Workers: partitioned process-pool sweeps
- Reports: output rendering and writing
"""
