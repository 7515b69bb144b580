"""Exact computations with derived representations of finite posets."""

__version__ = "0.1.0"
