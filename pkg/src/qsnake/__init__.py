"""Exact-arithmetic toolkit for type A quantum integrability.

Subpackages cover the loop-weight Laurent ring and q-characters of snake
modules, exact rational linear algebra, numerical rational R-matrices,
finite-lattice density matrices with their difference equations, and the
snail/fusion operator construction.  Everything is computed over Q; no
floating point enters any asserted identity.
"""

__version__ = "0.1.0"
