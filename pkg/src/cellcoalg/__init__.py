"""cellcoalg: exact coalgebra structures on cellular chains.

Integral E-infinity side: Alexander-Whitney and Serre coalgebras, the join
homotopy, cup-(r, i) coproducts through the psi recursion and Steenrod
operations at every prime.  Rational C-infinity side: free graded Lie
algebras inside tensor algebras, the Quillen construction, the
Lawrence-Sullivan interval and checkers for A-infinity data.
"""

from .scalars import F2, QQ, ZZ, RingTag, bernoulli, prime_field, ring_from_flag
from .free import Element, GradedMap, tensor
from .simplicial import SIMPLEX_MODEL, SimplicialComplex
from .cubical import CUBE_MODEL, CubicalComplex, periodic_grid
from .einfty import psi
from .cochains import (Cochain, Cohomology, PreconditionError, Report, cohomology,
                         cup_product, power_operation, steenrod_square)
from .cinfty import (Coalgebra, GradedSpace, LieDerivationData, TensorSeries,
                     check_square_zero, ls_cinfty_data, ls_interval, quillen_construction)
from .io import load_complex, load_sample

__version__ = "0.1.0"

__all__ = [
    "F2", "QQ", "ZZ", "RingTag", "bernoulli", "prime_field", "ring_from_flag",
    "Element", "GradedMap", "tensor", "SIMPLEX_MODEL", "SimplicialComplex",
    "CUBE_MODEL", "CubicalComplex", "periodic_grid", "psi",
    "Cochain", "Cohomology", "PreconditionError", "Report", "cohomology",
    "cup_product", "power_operation", "steenrod_square",
    "Coalgebra", "GradedSpace", "LieDerivationData", "TensorSeries",
    "check_square_zero", "ls_cinfty_data", "ls_interval", "quillen_construction",
    "load_complex", "load_sample",
]
