"""Exact Taylor-coefficient engine for the Jacobian elliptic functions.

Computes the coefficient polynomials of sn, cn and dn by several independent
routes, certifies their symmetry, unimodality and gamma-positivity with
reconstructible certificates, and validates everything against brute-force
enumeration of permutations and increasing trees.
"""

__version__ = "0.1.0"
