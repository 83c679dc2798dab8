"""
Exact genus-zero Gromov-Witten invariants of Fano complete intersections.

Everything is reduced to the closed-form one-point invariants:

* :mod:`gwci.ifunction` -- targets and one-point invariants,
* :mod:`gwci.twopoint` -- two-point invariants with one descendant,
* :mod:`gwci.quantum` -- the small quantum product on powers of ``H``,
* :mod:`gwci.multipoint` -- invariants with several descendant insertions.
"""
from .ifunction import Target, TargetError, one_point, validate_target
from .multipoint import InvariantStore, npoint
from .quantum import QuantumRing, product, two_point_count
from .twopoint import TwoPointTable, two_point

__all__ = ["Target", "TargetError", "validate_target", "one_point", "two_point",
           "TwoPointTable", "QuantumRing", "product", "two_point_count",
           "InvariantStore", "npoint"]
__version__ = "0.1.0"
