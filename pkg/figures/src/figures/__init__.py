"""Figure rendering for secrecy-performance curve CSV files."""

__version__ = "0.1.0"
