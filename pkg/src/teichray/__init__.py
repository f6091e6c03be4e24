"""Asymptotic invariants of Teichmueller rays from vertical-foliation data.

Modules:

* :mod:`teichray.foliation` - ray decompositions and single-ray limits
* :mod:`teichray.pairs` - limiting / detour distances, shifts, equivalence
* :mod:`teichray.torus` - flat-torus oracle
* :mod:`teichray.origami` - square-tiled surfaces
* :mod:`teichray.cli` - command line
"""

__version__ = "0.1.0"

from .exactlog import INF, ExactLog
from .foliation import (BasisFoliation, Certificate, Component, ExtendedValue,
                        GeneralFoliation, IntersectionVector, Kind, ModulusVector,
                        RayDecomposition, UndefinedRatio, e_q, flow,
                        grow_certificate, grow_limit, grow_limit_basis, moduli,
                        normalize, optimal_witness, shrink_limit)
from .pairs import (LogDistance, LogSum, NotComparable, PairAlignment, align,
                    busemann_equal, detour_distance, is_asymptotic,
                    limiting_distance, min_limiting_distance,
                    modular_equivalence, optimal_shift,
                    shifted_limiting_distance)
