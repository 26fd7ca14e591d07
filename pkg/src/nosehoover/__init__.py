"""Nosé-Hoover dynamics: simulation and non-ergodicity diagnostics."""
