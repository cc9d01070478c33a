"""Exact truncated two-mode Fock-space engine."""
