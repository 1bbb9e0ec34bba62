"""ramlock: arithmetic invariants of p-adic fields and elliptic curves.

The package computes the field- and curve-level invariants that pin down the
ramified part of the abelian geometric fundamental group of a curve with good
reduction, and assembles them into two-sided structure bounds.
"""

__version__ = "0.1.0"
