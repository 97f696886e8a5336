"""Generators shared by the tests."""

from fractions import Fraction as Fr

from genalg.associativity import build_generated_op
from genalg.generators import pw

h = Fr(1, 2)
q = Fr(1, 4)

# plateaus at 1/4 and 2, jumps at 3/4 and 7/8, mixed continuity
T31 = pw(
    "non_decreasing",
    (0, 1, q, 1, "AFFINE", (1, 0)),
    (q, 0, h, 1, "CONSTANT", (q,)),
    (h, 0, Fr(3, 4), 0, "AFFINE", (1, h)),
    (Fr(3, 4), 1, Fr(7, 8), 0, "CONSTANT", (2,)),
    (Fr(7, 8), 1, 1, 1, "AFFINE", (1, Fr(5, 4))),
)
# range [0,1/4] ∪ {1/2} ∪ (3/4,1]
T41A = pw(
    "non_decreasing",
    (0, 1, h, 1, "AFFINE", (h, 0)),
    (h, 0, Fr(3, 4), 1, "CONSTANT", (h,)),
    (Fr(3, 4), 0, 1, 1, "AFFINE", (1, 0)),
)
# two plateaus, an affine piece and a reciprocal tail reaching inf at 1
T41B = pw(
    "non_decreasing",
    (0, 1, Fr(1, 5), 1, "AFFINE", (1, 1)),
    (Fr(1, 5), 0, q, 1, "CONSTANT", (Fr(6, 5),)),
    (q, 0, h, 1, "CONSTANT", (Fr(3, 2),)),
    (h, 0, Fr(3, 4), 1, "AFFINE", (1, 2)),
    (Fr(3, 4), 0, 1, 0, "RECIPROCAL", (1, 1, 0)),
    (1, 1, 1, 1, "POINT_INF", ()),
)
# 1 at 0, inf elsewhere
T61B = pw("non_decreasing", (0, 1, 0, 1, "CONSTANT", (1,)), (0, 0, 1, 1, "POINT_INF", ()))
# identity with a plateau at 1/4 over (1/4,1/2]
T61C = pw(
    "non_decreasing",
    (0, 1, q, 1, "AFFINE", (1, 0)),
    (q, 0, h, 1, "CONSTANT", (q,)),
    (h, 0, 1, 1, "AFFINE", (1, 0)),
)
T_IDEM = pw(
    "non_decreasing",
    (0, 1, Fr(1, 5), 1, "AFFINE", (5, 0)),
    (Fr(1, 5), 0, h, 1, "CONSTANT", (2,)),
    (h, 0, 1, 1, "AFFINE", (10, 0)),
)
T_LIM1 = pw("non_decreasing", (0, 1, h, 1, "CONSTANT", (1,)), (h, 0, 1, 1, "CONSTANT", (2,)))
T_LIM2 = pw("non_decreasing", (0, 1, h, 1, "CONSTANT", (1,)), (h, 0, 1, 1, "AFFINE", (4, 0)))
T_CONT1 = pw(
    "non_decreasing",
    (0, 1, Fr(2, 5), 1, "AFFINE", (5, 0)),
    (Fr(2, 5), 0, h, 1, "CONSTANT", (2,)),
    (h, 0, 1, 1, "CONSTANT", (4,)),
)
T_CONT2 = pw("non_decreasing", (0, 1, h, 1, "AFFINE", (2, 0)), (h, 0, 1, 1, "AFFINE", (4, 0)))
T_CONT3 = pw("non_decreasing", (0, 1, h, 1, "CONSTANT", (4,)), (h, 0, 1, 1, "AFFINE", (2, 4)))
# right-continuous: x, then 1/2 on (1/2,3/4), then 3/4
T_S7 = pw(
    "non_decreasing",
    (0, 1, h, 1, "AFFINE", (1, 0)),
    (h, 0, Fr(3, 4), 0, "CONSTANT", (h,)),
    (Fr(3, 4), 1, 1, 1, "CONSTANT", (Fr(3, 4),)),
)
T_LUK = pw("non_increasing", (0, 1, 1, 1, "AFFINE", (-1, 1)))
IDENTITY = pw("non_decreasing", (0, 1, 1, 1, "AFFINE", (1, 0)))

LEFT_CONTINUOUS = {
    "4.1a": T41A,
    "4.1b": T41B,
    "6.1b": T61B,
    "6.1c": T61C,
    "idem": T_IDEM,
    "lim1": T_LIM1,
    "lim2": T_LIM2,
    "cont1": T_CONT1,
    "cont2": T_CONT2,
    "cont3": T_CONT3,
    "identity": IDENTITY,
}
ALL_GENERATORS = dict(LEFT_CONTINUOUS, **{"3.1": T31, "s7": T_S7, "luk": T_LUK})


def op(t, F, mode=None):
    return build_generated_op(t, F, mode)
