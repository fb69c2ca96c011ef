"""Hybrid quantum state transfer between heterogeneous cavity-QED nodes."""

__version__ = '0.1.0'
