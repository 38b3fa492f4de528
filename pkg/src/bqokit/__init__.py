"""Finite, checkable pieces of the better-quasi-order machinery: sequences and
the shift relation, block smoothing, Pouzet's order, barrier arrays, and the
reduction x -> (Q_x, R_x)."""

__version__ = "0.1.0"
