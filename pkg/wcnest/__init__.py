"""wcnest: weight-constraint programs, nested expressions and the translations between them."""

__version__ = '1.0.0'
