"""Exact congruence tests for kernels of low-dimensional B3 representations."""

__version__ = "0.1.0"
