"""Linear graph codes over GF(2): colorings, parity checks, even decompositions,
and exact extremal search on labeled-vertex graphs."""

__version__ = "0.1.0"
