"""Core tree operations, scoring and errors."""
