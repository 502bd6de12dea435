"""star-covers: Galois covers of complete graphs by star graphs."""

__version__ = "0.1.0"
