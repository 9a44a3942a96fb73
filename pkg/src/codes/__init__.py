"""The trace codes C1 and C2 and their weight distributions."""
