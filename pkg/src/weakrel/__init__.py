"""Weakly relational numerical abstract domains.

Non-relational bases (constants, intervals and congruences) are lifted into
relational domains of constraint matrices that bound every difference
``v_j - v_i``; zones and congruence matrices combine in a reduced product.  A small analyzer and command-line front end
compute loop invariants for a toy imperative language.
"""

from .basis import BOT, TOP, Basis, Pair, ProductBasis, Range, Residues
from .bases import (CongruenceBasis, ConstantBasis, IntervalBasis, interval_congruence,
                    make_basis)
from .kernel import have_native
from .nonrel import NonRelational
from .weakrel import ConstraintMatrix, ProductDomain, WeaklyRelational

__version__ = "0.1.0"

__all__ = [
    "BOT", "TOP", "Basis", "Pair", "ProductBasis", "Range", "Residues",
    "ConstantBasis", "IntervalBasis", "CongruenceBasis", "interval_congruence",
    "make_basis", "NonRelational", "ConstraintMatrix", "WeaklyRelational", "ProductDomain",
    "have_native", "__version__",
]
