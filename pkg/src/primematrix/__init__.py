"""Primorial wheel matrices: twin-residue enumeration and prime gap statistics."""

__version__ = "0.1.0"
