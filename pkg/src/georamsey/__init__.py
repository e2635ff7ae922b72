"""Geometric Ramsey workbench: non-crossing monochromatic embeddings of trees
and outerplanar graphs in 2-coloured complete geometric graphs."""

__version__ = "0.1.0"
