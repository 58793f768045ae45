"""Exact classification of rational quantum tori.

Submodules: ``cyclic_ring`` (Z/(m) arithmetic), ``cyclotomic`` (Q(zeta_M)),
``matrices`` (Smith forms and lifting), ``alternating`` (orbits of
alternating forms), ``cohomology`` (cocycles and quadratic forms), ``torus``
(twisted group algebras and their classification) and ``automorphisms``
(graded automorphisms and the splitting for A_q).
"""

from .errors import DEFAULT_MAX_WORK, FeasibilityError

__version__ = "0.1.0"

__all__ = ["DEFAULT_MAX_WORK", "FeasibilityError", "__version__"]
