"""Sand-pile transition systems and their lattices."""

__version__ = "0.1.0"
