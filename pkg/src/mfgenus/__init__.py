"""Exact genera of complete simplicial multi-fans.

Submodules: :mod:`lattice` and :mod:`cyclotomic` (exact arithmetic),
:mod:`fan` (the multi-fan model), :mod:`cohomology` (face ring classes and
c1 divisibility), :mod:`genera` (T_y-type genera), :mod:`qseries`
(elliptic genera along a generic vector), :mod:`classify` and :mod:`cli`.
"""

__version__ = "0.1.0"
