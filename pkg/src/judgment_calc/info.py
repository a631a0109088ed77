"""Information measures in bits, and the two common-information constructions.

``i(a) = -log2 P(a)``.  Values are :class:`Bits`, a float that may be
``+inf`` or ``-inf`` but refuses to form ``inf - inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .circumstance import Circumstance, cond_prob, extend, lift, prob
from .errors import (
    DegenerateInput,
    IndeterminateForm,
    Infeasible,
    NotNegativelyCorrelated,
    NotPositivelyCorrelated,
    ProbabilitySumExceedsOne,
)
from .props import Proposition

TOLERANCE = 1e-9


class Bits(float):
    """Extended real in bits.  ``inf - inf`` raises :class:`IndeterminateForm`."""

    def __add__(self, other):
        other = float(other)
        if math.isinf(self) and math.isinf(other) and (self > 0) != (other > 0):
            raise IndeterminateForm(f"{float(self)} + {other}")
        return Bits(float(self) + other)

    __radd__ = __add__

    def __sub__(self, other):
        return self + Bits(-float(other))

    def __rsub__(self, other):
        return Bits(other) - self

    def __neg__(self):
        return Bits(-float(self))

    def __repr__(self):
        return f"Bits({float(self)!r})"

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self)


def log2_ratio(x: Fraction) -> Bits:
    """``log2`` of a non-negative rational; ``-inf`` at zero."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"log of negative number {x}")
    if x == 0:
        return Bits(-math.inf)
    f = float(x)
    if 1e-300 < f < 1e300:
        return Bits(math.log2(f))
    return Bits(math.log2(x.numerator) - math.log2(x.denominator))


def info(c: Circumstance, a: Proposition) -> Bits:
    return -log2_ratio(prob(c, a))


def cond_info(c: Circumstance, a: Proposition, b: Proposition) -> Bits:
    """i(a | b)."""
    return -log2_ratio(cond_prob(c, a, b))


def common_info(c: Circumstance, a: Proposition, b: Proposition) -> Bits:
    """i(a; b) = i(a) + i(b) - i(ab); negative when a and b repel."""
    pa, pb = prob(c, a), prob(c, b)
    if pa == 0 or pb == 0:
        raise IndeterminateForm("common information needs P(a) > 0 and P(b) > 0 (inf - inf)")
    return log2_ratio(prob(c, a & b) / (pa * pb))


@dataclass(frozen=True)
class SignPattern:
    ab: Bits
    nab: Bits  # i(~a; b)
    anb: Bits  # i(a; ~b)
    nanb: Bits

    def as_dict(self) -> dict[str, Bits]:
        return {"a;b": self.ab, "~a;b": self.nab, "a;~b": self.anb, "~a;~b": self.nanb}

    @property
    def negative(self) -> list[str]:
        return [k for k, v in self.as_dict().items() if v < 0]

    @property
    def positive(self) -> list[str]:
        return [k for k, v in self.as_dict().items() if v > 0]


def _interior(c, a, b):
    pa, pb = prob(c, a), prob(c, b)
    if not (0 < pa < 1 and 0 < pb < 1):
        raise DegenerateInput(f"need 0 < P < 1, got P(a)={pa}, P(b)={pb}")
    return pa, pb


def sign_pattern(c: Circumstance, a: Proposition, b: Proposition) -> SignPattern:
    pa, pb = _interior(c, a, b)
    if prob(c, a & b) == pa * pb:
        raise DegenerateInput("a and b are independent; every common information is 0")
    return SignPattern(
        common_info(c, a, b),
        common_info(c, ~a, b),
        common_info(c, a, ~b),
        common_info(c, ~a, ~b),
    )


def _cells(a: Proposition, b: Proposition) -> dict[tuple[int, int], Proposition]:
    return {(1, 1): a & b, (1, 0): a & ~b, (0, 1): ~a & b, (0, 0): ~a & ~b}


def _extend_by_cells(
    c: Circumstance,
    cells: Mapping[tuple[int, int], Proposition],
    names: Sequence[str],
    joints: Mapping[tuple[int, int], Mapping[tuple[int, ...], Fraction]],
) -> Circumstance:
    """Append ``names`` as atoms whose joint law inside each cell is ``joints[cell]``.

    The law is the same for every world of the cell (and every tier), so
    the within-cell distribution of the old atoms is untouched.
    """
    cell_of = {}
    for key, prop in cells.items():
        for w in prop.iter_worlds():
            cell_of[w] = key
    out = c
    n_old = len(c.space.atoms)
    for j, name in enumerate(names):
        def ratio(w, j=j):
            key = cell_of[w & ((1 << n_old) - 1)]
            prefix = tuple(w >> (n_old + k) & 1 for k in range(j))
            joint = joints[key]
            here = sum((m for o, m in joint.items() if o[:j] == prefix), Fraction(0))
            if here == 0:
                return Fraction(0)
            on = sum((m for o, m in joint.items() if o[:j] == prefix and o[j] == 1), Fraction(0))
            return on / here
        out = extend(out, name, ratio)
    return out


def decompose_common(
    c: Circumstance,
    a: Proposition,
    b: Proposition,
    names: Sequence[str] = ("C", "D", "E"),
):
    """Split positively correlated ``a``, ``b`` into independent C, D, E.

    Returns ``(extended, C, D, E)`` where ``a`` is equivalent to ``CD``,
    ``b`` to ``DE`` and ``i(D) = i(a; b)``.
    """
    pa, pb = _interior(c, a, b)
    pab = prob(c, a & b)
    if pab <= pa * pb:
        raise NotPositivelyCorrelated(f"i(a;b) <= 0 (P(ab)={pab}, P(a)P(b)={pa * pb})")
    pc, pd, pe = pab / pb, pa * pb / pab, pab / pa

    def law(x, y, z):
        return (pc if x else 1 - pc) * (pd if y else 1 - pd) * (pe if z else 1 - pe)

    rest = [o for o in _triples() if o not in ((1, 1, 1), (1, 1, 0), (0, 1, 1))]
    rest_total = sum(law(*o) for o in rest)
    if rest_total:
        joint00 = {o: law(*o) / rest_total for o in rest}
    else:
        # the ~a~b cell is empty at tier 0; deeper worlds there spread evenly
        joint00 = {o: Fraction(1, len(rest)) for o in rest}
    joints = {
        (1, 1): {(1, 1, 1): Fraction(1)},
        (1, 0): {(1, 1, 0): Fraction(1)},
        (0, 1): {(0, 1, 1): Fraction(1)},
        (0, 0): joint00,
    }
    ext = _extend_by_cells(c, _cells(a, b), names, joints)
    return (ext, *(ext.space.atom(n) for n in names))


def _triples():
    return [(x, y, z) for x in (1, 0) for y in (1, 0) for z in (1, 0)]


def independent_consequence(c: Circumstance, a: Proposition, b: Proposition, name: str = "C"):
    """Add an atom C implied by ``ab`` but independent of ``a`` and of ``b``.

    Returns ``(extended, C)``.  Needs ``i(a;b) < 0`` and ``P(a)+P(b) <= 1``.
    """
    pa, pb = prob(c, a), prob(c, b)
    if pa == 0 or pb == 0:
        raise IndeterminateForm("independent consequence needs P(a) > 0 and P(b) > 0")
    pab = prob(c, a & b)
    if pab >= pa * pb:
        raise NotNegativelyCorrelated(f"i(a;b) >= 0 (P(ab)={pab}, P(a)P(b)={pa * pb})")
    if pa + pb > 1:
        raise ProbabilitySumExceedsOne(f"P(a) + P(b) = {pa + pb} > 1")
    pc = pab / (pa * pb)
    cells = _cells(a, b)
    on_c = {
        (1, 1): pab,
        (1, 0): pa * pc - pab,
        (0, 1): pb * pc - pab,
        (0, 0): pab * (1 - pa) * (1 - pb) / (pa * pb),
    }
    labels = {(1, 1): "ab", (1, 0): "a~b", (0, 1): "~ab", (0, 0): "~a~b"}
    joints = {}
    for key, m in on_c.items():
        total = prob(c, cells[key])
        if m < 0 or m > total:
            raise Infeasible(f"cell {labels[key]} needs C-mass {m} but holds only {total}")
        if key == (1, 1):
            share = Fraction(1)
        else:
            share = m / total if total else Fraction(0)
        joints[key] = {(1,): share, (0,): 1 - share}
    ext = _extend_by_cells(c, cells, [name], joints)
    return ext, ext.space.atom(name)


def lifted(ext: Circumstance, *props: Proposition) -> list[Proposition]:
    """Convenience: re-express old propositions over an extended space."""
    return [lift(p, ext.space) for p in props]
