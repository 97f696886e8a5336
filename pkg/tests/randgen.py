"""Seeded random left-continuous non-decreasing generators for cross-checks."""

import random
from fractions import Fraction

from genalg.generators import pw


def random_generator(seed: int, max_segments: int = 6):
    rng = random.Random(seed)
    n = rng.randint(1, max_segments)
    cuts = sorted({Fraction(rng.randint(1, 11), 12) for _ in range(n - 1)})
    bounds = [Fraction(0)] + cuts + [Fraction(1)]
    segs = []
    level = Fraction(rng.randint(0, 4), 4)
    for i, (a, b) in enumerate(zip(bounds, bounds[1:])):
        if i > 0 and rng.random() < 0.6:
            level += Fraction(rng.randint(1, 4), 4)  # jump up at a
        if rng.random() < 0.45:
            segs.append((a, i == 0, b, True, "CONSTANT", (level,)))
            end = level
        else:
            slope = Fraction(rng.randint(1, 4), rng.randint(1, 2))
            segs.append((a, i == 0, b, True, "AFFINE", (slope, level - slope * a)))
            end = level + slope * (b - a)
        level = end
    return pw("non_decreasing", *segs)
