"""Rank-one Breuil-Kisin modules with tame descent data: Hom, Ext^1 and
ker-Ext by closed formulas and by finite linear algebra, together with the
shape, weight and Dieudonne combinatorics of tame types."""

__version__ = "0.1.0"
