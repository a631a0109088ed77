"""Circumstances: lexicographic tiers of exact rational world weights.

Tier 0 carries every unconditional probability.  Deeper tiers say what
the probabilities would become if a proposition of probability zero were
given: conditioning on ``a`` uses the first tier that gives ``a`` positive
mass.  Worlds that appear in no tier are inconceivable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Mapping, Optional, Union

from .errors import (
    CorruptRationals,
    DuplicateAtom,
    IncompleteSplit,
    Inconceivable,
    InvalidCircumstance,
    SpaceMismatch,
    UnknownWorld,
    WeightOutOfRange,
)
from .props import Proposition, WorldSpace, build_space


@dataclass(frozen=True)
class Tier:
    weights: Mapping[int, Fraction]
    # masses memoised by world mask; tiers are immutable so this never goes stale
    _masses: dict[int, Fraction] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.weights:
            raise InvalidCircumstance("a tier must have at least one world")
        for w, x in self.weights.items():
            if not isinstance(x, Rational):
                raise InvalidCircumstance(f"weight of world {w} is not rational: {x!r}")
            if x <= 0:
                raise InvalidCircumstance(f"world {w} has non-positive weight {x}")
        total = sum(self.weights.values())
        if total != 1:
            raise InvalidCircumstance(f"tier weights sum to {total}, not 1")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.weights)

    def mass(self, p: Proposition) -> Fraction:
        m = self._masses.get(p.mask)
        if m is None:
            m = sum((x for w, x in self.weights.items() if p.contains(w)), Fraction(0))
            self._masses[p.mask] = m
        return m

    def restrict(self, p: Proposition) -> Optional["Tier"]:
        """Renormalised restriction to ``p``, or None when ``p`` has no mass here."""
        kept = {w: x for w, x in self.weights.items() if p.contains(w)}
        total = sum(kept.values())
        if not kept:
            return None
        return Tier({w: x / total for w, x in sorted(kept.items())})

    @classmethod
    def normalized(cls, raw: Mapping[int, Rational]) -> "Tier":
        kept = {w: Fraction(x) for w, x in raw.items() if x != 0}
        if any(x < 0 for x in kept.values()):
            raise InvalidCircumstance("negative weight")
        total = sum(kept.values())
        if total == 0:
            raise InvalidCircumstance("tier has zero total weight")
        return cls({w: x / total for w, x in sorted(kept.items())})


@dataclass(frozen=True)
class Circumstance:
    space: WorldSpace
    tiers: tuple[Tier, ...]

    def __post_init__(self):
        if not self.tiers:
            raise InvalidCircumstance("a circumstance needs at least one tier")
        seen: set[int] = set()
        for k, tier in enumerate(self.tiers):
            for w in tier.weights:
                if not 0 <= w < self.space.world_count:
                    raise UnknownWorld(f"world {w} is outside the space")
                if w in seen:
                    raise InvalidCircumstance(f"world {w} appears in more than one tier (tier {k})")
                seen.add(w)

    @property
    def conceivable(self) -> Proposition:
        mask = 0
        for tier in self.tiers:
            for w in tier.weights:
                mask |= 1 << w
        return Proposition(self.space, mask)

    def atom(self, name: str) -> Proposition:
        return self.space.atom(name)


def _check_space(c: Circumstance, *props: Proposition) -> None:
    for p in props:
        if p.space != c.space:
            raise SpaceMismatch(f"proposition over {p.space.atoms}, circumstance over {c.space.atoms}")


def uniform(space: WorldSpace) -> Circumstance:
    n = space.world_count
    return Circumstance(space, (Tier({w: Fraction(1, n) for w in range(n)}),))


def from_weights(space: WorldSpace, *tiers: Mapping[int, Rational]) -> Circumstance:
    """Build a circumstance from unnormalised per-tier weights; zeros are dropped."""
    return Circumstance(space, tuple(Tier.normalized(t) for t in tiers))


def prob(c: Circumstance, p: Proposition) -> Fraction:
    _check_space(c, p)
    return c.tiers[0].mass(p)


def _first_tier(c: Circumstance, a: Proposition) -> Tier:
    for tier in c.tiers:
        if tier.mass(a) > 0:
            return tier
    raise Inconceivable(f"no conceivable world satisfies the condition ({a!r})")


def cond_prob(c: Circumstance, b: Proposition, a: Proposition) -> Fraction:
    """P(b | a), read off the first tier giving ``a`` positive mass."""
    _check_space(c, a, b)
    tier = _first_tier(c, a)
    return tier.mass(a & b) / tier.mass(a)


def judge(c: Circumstance, a: Proposition) -> Circumstance:
    """Give ``a``: its worlds move up in tier order, the rest are demoted below."""
    _check_space(c, a)
    _first_tier(c, a)
    kept = [t.restrict(a) for t in c.tiers]
    demoted = [t.restrict(~a) for t in c.tiers]
    return Circumstance(c.space, tuple(t for t in kept + demoted if t is not None))


Split = Union[Rational, Mapping[int, Rational], Callable[[int], Rational]]


def _split_lookup(c: Circumstance, split: Split, default: Optional[Rational]):
    if isinstance(split, Rational):
        value = Fraction(split)
        return lambda w: value
    if callable(split) and not isinstance(split, Mapping):
        return lambda w: Fraction(split(w))
    for w in split:
        if not isinstance(w, int) or not 0 <= w < c.space.world_count:
            raise UnknownWorld(f"split names unknown world {w!r}")

    def lookup(w):
        if w in split:
            return Fraction(split[w])
        if default is None:
            raise IncompleteSplit(f"no split ratio for world {w}")
        return Fraction(default)

    return lookup


def extend(
    c: Circumstance,
    new_atom: str,
    split: Split,
    default: Optional[Rational] = None,
) -> Circumstance:
    """Refine the space with ``new_atom``.

    Each world ``w`` of each tier is split into ``(w, new_atom)`` with weight
    ``x * split(w)`` and ``(w, ~new_atom)`` with the remainder, so summing
    out the new atom gives back ``c`` exactly.  ``split`` is a constant, a
    mapping from world index (``default`` fills gaps) or a callable.
    """
    if new_atom in c.space.atoms:
        raise DuplicateAtom(f"atom {new_atom!r} already in the space")
    space = build_space(c.space.atoms + (new_atom,))
    bit = 1 << len(c.space.atoms)
    ratio = _split_lookup(c, split, default)
    tiers = []
    for tier in c.tiers:
        weights = {}
        for w, x in tier.weights.items():
            s = ratio(w)
            if not 0 <= s <= 1:
                raise WeightOutOfRange(f"split ratio {s} for world {w} is outside [0, 1]")
            if s != 0:
                weights[w | bit] = x * s
            if s != 1:
                weights[w] = x * (1 - s)
        tiers.append(Tier(dict(sorted(weights.items()))))
    return Circumstance(space, tuple(tiers))


def marginalize(c: Circumstance, atom: str) -> Circumstance:
    """Sum out ``atom``, tier by tier."""
    i = c.space.index_of(atom)
    space = build_space(c.space.atoms[:i] + c.space.atoms[i + 1:])
    low = (1 << i) - 1

    def project(w):
        return (w & low) | ((w >> (i + 1)) << i)

    tiers = []
    for tier in c.tiers:
        weights: dict[int, Fraction] = {}
        for w, x in tier.weights.items():
            v = project(w)
            weights[v] = weights.get(v, Fraction(0)) + x
        tiers.append(weights)
    # projections of distinct tiers may collide; keep each world in its first tier
    out, seen = [], set()
    for weights in tiers:
        fresh = {w: x for w, x in weights.items() if w not in seen}
        seen.update(weights)
        if fresh:
            out.append(Tier.normalized(fresh))
    return Circumstance(space, tuple(out))


def lift(p: Proposition, space: WorldSpace) -> Proposition:
    """Re-express ``p`` over a space that appends atoms to ``p.space``."""
    n_old = len(p.space.atoms)
    if space.atoms[:n_old] != p.space.atoms:
        raise SpaceMismatch("target space does not extend the proposition's space")
    width = p.space.world_count
    reps = space.world_count // width
    return Proposition(space, p.mask * (((1 << (width * reps)) - 1) // ((1 << width) - 1)))


# -- serialization ----------------------------------------------------------

_RATIONAL = re.compile(r"(-?\d+)/(\d+)\Z")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text) if isinstance(text, str) else None
    if not m:
        raise CorruptRationals(f"not a num/den rational: {text!r}")
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise CorruptRationals(f"zero denominator in {text!r}")
    return Fraction(num, den)


def to_dict(c: Circumstance) -> dict:
    return {
        "atoms": list(c.space.atoms),
        "tiers": [
            {"weights": {str(w): format_rational(x) for w, x in sorted(t.weights.items())}}
            for t in c.tiers
        ],
    }


def from_dict(doc: Mapping) -> Circumstance:
    try:
        space = build_space(doc["atoms"])
        raw_tiers = doc["tiers"]
        tiers = []
        for raw in raw_tiers:
            weights = {}
            for key, value in raw["weights"].items():
                if not key.isdigit():
                    raise UnknownWorld(f"world key {key!r} is not a decimal bitmask")
                weights[int(key)] = parse_rational(value)
            tiers.append(Tier(weights))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidCircumstance(f"malformed circumstance document: {exc}") from None
    return Circumstance(space, tuple(tiers))
