"""Exact-arithmetic toolkit for pencils of quadrics on P^4, quartic del Pezzo
surfaces and their one-parameter families, spectral binary quintics, and the
monodromy bookkeeping that tells components of such families apart.

All core computation is exact over Q (fractions.Fraction); no floating point
enters any verified quantity.
"""

__version__ = "0.1.0"
