"""Judging that ``a`` implies ``b``, in four different ways.

Every mode empties the ``a~b`` cell; they differ in where its mass goes
and so in which of P(a), P(b) move:

=============  ==========  ==========  ============================
mode           P(a)        P(b)        receiving cell for a~b mass
=============  ==========  ==========  ============================
material       falls       rises       all cells, renormalised
sufficient     unchanged   P(a or b)   ab
necessary      P(ab)       unchanged   ~a~b
conservative   unchanged   unchanged   ab and ~a~b (needs P(b) >= P(a))
=============  ==========  ==========  ============================

Inside each cell, worlds keep their relative weights.  Worlds that lose
all their mass are demoted below the new tier 0 rather than deleted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .circumstance import Circumstance, Tier, cond_prob, extend, judge, prob
from .errors import (
    DegenerateInput,
    Infeasible,
    InsufficientInformation,
    NotCounterfactual,
    PreconditionViolated,
)
from .info import TOLERANCE, Bits, cond_info, info
from .props import Proposition, build_space


class ImplicationMode(enum.Enum):
    MATERIAL = "material"
    SUFFICIENT = "sufficient"
    NECESSARY = "necessary"
    CONSERVATIVE = "conservative"


@dataclass(frozen=True)
class CellTransport:
    """Posterior tier-0 mass of each (a, b) cell."""

    ab: Fraction
    a_nb: Fraction
    na_b: Fraction
    na_nb: Fraction

    def __post_init__(self):
        if min(self.as_tuple()) < 0 or sum(self.as_tuple()) != 1:
            raise ValueError(f"cell masses {self.as_tuple()} are not a distribution")

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.ab, self.a_nb, self.na_b, self.na_nb)


def _cells(a, b):
    return (a & b, a & ~b, ~a & b, ~a & ~b)


def _require(c, a, b, mode):
    pa, pb = prob(c, a), prob(c, b)
    if mode is ImplicationMode.MATERIAL and prob(c, ~a | b) == 0:
        raise DegenerateInput("P(~a | b) = 0: the material conditional is disbelieved")
    if mode in (ImplicationMode.SUFFICIENT, ImplicationMode.CONSERVATIVE) and pa == 0:
        raise DegenerateInput("P(a) = 0; use counterfactual_sufficient for this case")
    if mode in (ImplicationMode.NECESSARY, ImplicationMode.CONSERVATIVE) and pb == 1:
        raise DegenerateInput("P(~b) = 0: b is already believed")
    if mode is ImplicationMode.CONSERVATIVE and pb < pa:
        raise PreconditionViolated(f"P(b) = {pb} is less than P(a) = {pa}")
    return pa, pb


def transport_for(c: Circumstance, a: Proposition, b: Proposition, mode: ImplicationMode) -> CellTransport:
    mode = ImplicationMode(mode)
    pa, pb = _require(c, a, b, mode)
    p_ab, p_anb, p_nab, p_nanb = (prob(c, x) for x in _cells(a, b))
    if mode is ImplicationMode.MATERIAL:
        z = p_ab + p_nab + p_nanb
        return CellTransport(p_ab / z, Fraction(0), p_nab / z, p_nanb / z)
    if mode is ImplicationMode.SUFFICIENT:
        return CellTransport(pa, Fraction(0), p_nab, p_nanb)
    if mode is ImplicationMode.NECESSARY:
        return CellTransport(p_ab, Fraction(0), p_nab, 1 - pb)
    return CellTransport(pa, Fraction(0), pb - pa, 1 - pb)


def _cell_distribution(c: Circumstance, cell: Proposition) -> Optional[Tier]:
    for tier in c.tiers:
        restricted = tier.restrict(cell)
        if restricted is not None:
            return restricted
    return None


def _posterior_tier(c, a, b, transport):
    weights = {}
    for cell, m in zip(_cells(a, b), transport.as_tuple()):
        if m == 0:
            continue
        dist = _cell_distribution(c, cell)
        if dist is None:
            raise DegenerateInput("a cell that must receive mass has no conceivable world")
        for w, x in dist.weights.items():
            weights[w] = m * x
    return Tier(dict(sorted(weights.items())))


def apply_implication(c: Circumstance, a: Proposition, b: Proposition, mode: ImplicationMode) -> Circumstance:
    """Return the circumstance after judging that ``a`` implies ``b``."""
    mode = ImplicationMode(mode)
    transport = transport_for(c, a, b, mode)
    if _cell_distribution(c, a & b) is None and _cell_distribution(c, a) is not None:
        raise DegenerateInput("a & b is inconceivable, so a cannot be made to imply b")
    top = _posterior_tier(c, a, b, transport)
    used = Proposition(c.space, sum(1 << w for w in top.weights))
    keep = (~a | b) & ~used
    counterexamples = a & ~b
    rest = [t.restrict(keep) for t in c.tiers] + [t.restrict(counterexamples) for t in c.tiers]
    return Circumstance(c.space, (top,) + tuple(t for t in rest if t is not None))


def _max_p_t(c, a, b, mode) -> Fraction:
    """Largest admissible P(T); its -log2 is the minimal information."""
    if mode is ImplicationMode.MATERIAL:
        return prob(c, ~a | b)
    if mode is ImplicationMode.SUFFICIENT:
        return cond_prob(c, b, a)
    if mode is ImplicationMode.NECESSARY:
        return cond_prob(c, ~a, ~b)
    return min(cond_prob(c, b, a), cond_prob(c, ~a, ~b))


def min_info_T(c: Circumstance, a: Proposition, b: Proposition, mode: ImplicationMode) -> Bits:
    mode = ImplicationMode(mode)
    if mode is ImplicationMode.MATERIAL:
        return info(c, ~a | b)
    needs_a = mode in (ImplicationMode.SUFFICIENT, ImplicationMode.CONSERVATIVE)
    needs_nb = mode in (ImplicationMode.NECESSARY, ImplicationMode.CONSERVATIVE)
    if needs_a and prob(c, a) == 0:
        raise DegenerateInput("P(a) = 0: the bound i(b|a) does not apply")
    if needs_nb and prob(c, ~b) == 0:
        raise DegenerateInput("P(~b) = 0: the bound i(~a|~b) does not apply")
    if mode is ImplicationMode.SUFFICIENT:
        return cond_info(c, b, a)
    if mode is ImplicationMode.NECESSARY:
        return cond_info(c, ~a, ~b)
    return Bits(max(cond_info(c, b, a), cond_info(c, ~a, ~b)))


def construct_T(
    c: Circumstance,
    a: Proposition,
    b: Proposition,
    mode: ImplicationMode,
    info_t: Optional[float] = None,
    *,
    p_t: Optional[Fraction] = None,
    name: str = "T",
):
    """Realise the judgment as an explicit proposition ``T`` on a new atom.

    Pass either ``info_t`` (bits) or an exact ``p_t``.  A value of
    ``info_t`` within 1e-9 bits of the bound is snapped onto it exactly.
    Given ``T`` the tier-0 law is the posterior of
    :func:`apply_implication`; summing out ``T`` gives back ``c``.
    Returns ``(extended, T)``.
    """
    mode = ImplicationMode(mode)
    if prob(c, a) == 0:
        raise DegenerateInput("P(a) = 0; use counterfactual_sufficient / counterfactual_T")
    bound = min_info_T(c, a, b, mode)
    p_max = _max_p_t(c, a, b, mode)
    if p_t is None:
        if info_t is None:
            raise ValueError("give info_t or p_t")
        if not math.isfinite(info_t):
            raise DegenerateInput("info_t must be finite")
        if info_t < bound - TOLERANCE:
            raise InsufficientInformation(
                f"i(T) = {info_t:.6g} bits is below the bound {float(bound):.6g}", bound)
        p_t = p_max if info_t <= bound + TOLERANCE else Fraction(2.0 ** -float(info_t))
    p_t = Fraction(p_t)
    if not 0 < p_t <= 1:
        raise ValueError(f"P(T) = {p_t} outside (0, 1]")
    if p_t > p_max:
        raise InsufficientInformation(f"P(T) = {p_t} exceeds {p_max}", bound)

    posterior = apply_implication(c, a, b, mode).tiers[0].weights
    base = c.tiers[0].weights
    counterexample = a & ~b
    split = {}
    for w in range(c.space.world_count):
        if w in base:
            s = p_t * posterior.get(w, 0) / base[w]
            if s > 1:
                raise Infeasible(f"P(world {c.space.describe_world(w)} & ~T) would be negative")
            split[w] = s
        elif w in posterior:
            raise Infeasible(f"world {c.space.describe_world(w)} has no prior mass to move under T")
        else:
            split[w] = Fraction(0) if counterexample.contains(w) else Fraction(1)
    ext = extend(c, name, split)
    return ext, ext.space.atom(name)


def counterfactual_sufficient(c: Circumstance, a: Proposition, b: Proposition) -> Circumstance:
    """Give ``~a | b`` when P(a) = 0: probabilities stay, P(b|a) becomes 1."""
    if prob(c, a) != 0:
        raise NotCounterfactual(f"P(a) = {prob(c, a)} is not zero")
    cond_prob(c, a, a)  # Inconceivable if no world satisfies a
    if _cell_distribution(c, a & b) is None:
        raise DegenerateInput("a & b is inconceivable, so a cannot be made to imply b")
    return judge(c, ~a | b)


def counterfactual_T(
    c: Circumstance,
    a: Proposition,
    b: Proposition,
    strength: Fraction = Fraction(1),
    name: str = "T",
):
    """Make the counterfactual judgment explicit as an atom with P(T) = 1.

    Deep ``a~b`` worlds are all ``~T``; deep ``ab`` worlds are ``T`` with
    probability ``strength``, so P(T | a) = strength * P(b | a).
    Returns ``(extended, T)``.
    """
    if prob(c, a) != 0:
        raise NotCounterfactual(f"P(a) = {prob(c, a)} is not zero")
    strength = Fraction(strength)
    if not 0 < strength <= 1:
        raise ValueError("strength must lie in (0, 1]")
    ab, anb = a & b, a & ~b

    def split(w):
        if anb.contains(w):
            return Fraction(0)
        if ab.contains(w):
            return strength
        return Fraction(1)

    ext = extend(c, name, split)
    return ext, ext.space.atom(name)


def judge_sufficient(c: Circumstance, a: Proposition, b: Proposition) -> Circumstance:
    """Sufficient-condition judgment, routed to the counterfactual form when P(a) = 0."""
    if prob(c, a) == 0:
        return counterfactual_sufficient(c, a, b)
    return apply_implication(c, a, b, ImplicationMode.SUFFICIENT)


def judgment_atom(c: Circumstance, judged: Circumstance, name: str = "N") -> Circumstance:
    """Embed a judgment as a probability-zero atom.

    The result has P(name) = 0; conditioning on ``name`` reproduces
    ``judged`` and conditioning on its negation reproduces ``c``.
    """
    if judged.space != c.space:
        raise ValueError("both circumstances must share one space")
    space = build_space(c.space.atoms + (name,))
    bit = 1 << len(c.space.atoms)
    tiers = [Tier(dict(t.weights)) for t in c.tiers]
    tiers += [Tier({w | bit: x for w, x in t.weights.items()}) for t in judged.tiers]
    return Circumstance(space, tuple(tiers))
