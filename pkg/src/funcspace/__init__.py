"""funcspace: numerical toolkit and verification harness for
rearrangement-based function-space inequalities."""

__version__ = "0.1.0"
