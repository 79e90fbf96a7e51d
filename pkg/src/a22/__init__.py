"""Exact and numeric computations on the level-2 Siegel modular threefold A_2(2).

The ten even theta characteristics index the coordinates of P^9; every
module works with 1-based coordinate indices in binary order of the
characteristics, so ``(0000)`` is coordinate 1 and ``(1111)`` coordinate 10.
"""

__version__ = "0.1.0"
