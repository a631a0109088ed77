"""Small named circumstances over atoms ``a`` and ``b``.

World indices: 0 = ~a~b, 1 = a~b, 2 = ~ab, 3 = ab.
"""

from fractions import Fraction as F

from .circumstance import Circumstance, Tier
from .props import build_space

AB_SPACE = build_space(["a", "b"])


def e1() -> Circumstance:
    """Single tier with P(a) = 1/2, P(b) = 2/5, P(ab) = 1/10."""
    return Circumstance(AB_SPACE, (Tier({0: F(1, 5), 1: F(2, 5), 2: F(3, 10), 3: F(1, 10)}),))


def e2() -> Circumstance:
    """P(a) = 0; the a-worlds sit in a second tier with P(b | a) = 3/4."""
    return Circumstance(
        AB_SPACE,
        (Tier({0: F(1, 2), 2: F(1, 2)}), Tier({1: F(1, 4), 3: F(3, 4)})),
    )


FIXTURES = {"E1": e1, "E2": e2}
