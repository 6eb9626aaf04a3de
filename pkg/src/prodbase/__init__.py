"""Base sizes, regular suborbits and distinguishing partitions for permutation groups."""

__version__ = "0.1.0"
