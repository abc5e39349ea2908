"""Generalized Heron problem solvers."""
