"""First-order model checking and structure analysis for finite groups."""

__version__ = "0.1.0"
