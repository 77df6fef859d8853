"""Compile polycubes to tetrakis (box-pleating) crease patterns and verify the folds."""

__version__ = "0.1.0"
