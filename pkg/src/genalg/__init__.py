"""Exact construction and analysis of operations generated by monotone functions.

T(x, y) = t^[-1](F(t(x), t(y))) for a piecewise monotone generator t on
[0, 1] and an associative semigroup F on [0, inf].
"""

from .associativity import (
    GeneratedOp,
    Mode,
    Verdict,
    brute_force_assoc,
    build_generated_op,
    check_generator_condition,
    default_grid,
    f_condition_check,
    frak_t,
)
from .decomposition import RangeDecomposition, decompose, g_m, otimes, star_system
from .generators import PiecewiseMonotone, load_generator, plateau_data, pw, range_of, validate
from .inverses import pseudo_inverse, quasi_inverse_bounds, weak_pseudo_inverse
from .numerics import INF, IntervalPointSet, ext, f_image, fmt, normalize, o_hull
from .properties import (
    cancellation_check,
    continuity_check,
    diagonal_powers,
    idempotent_points,
    limit_property_check,
    supconorm_equivalence_check,
)
from .semigroups import LINPROD, MAX, SUM, PreconditionViolated, SemigroupDescriptor, table_semigroup

__version__ = "0.1.0"
