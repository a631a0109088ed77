"""World spaces, propositions as world-sets, and the formula parser.

A world is a complete truth assignment.  World ``k`` gives atom ``i`` the
truth value of bit ``i`` of ``k``; this indexing is part of the on-disk
format and must not change.  A proposition stores its world-set as an
integer bitmask (bit ``k`` set iff world ``k`` satisfies it).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Optional, Sequence

from .errors import (
    DuplicateAtom,
    EmptyAtomList,
    FormulaSyntaxError,
    SpaceMismatch,
    TooManyAtoms,
    UnknownAtom,
)

MAX_ATOMS = 24

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class WorldSpace:
    atoms: tuple[str, ...]

    def __post_init__(self):
        if not self.atoms:
            raise EmptyAtomList("a world space needs at least one atom")
        if len(self.atoms) > MAX_ATOMS:
            raise TooManyAtoms(f"{len(self.atoms)} atoms exceeds the limit of {MAX_ATOMS}")
        seen = set()
        for name in self.atoms:
            if not isinstance(name, str) or not _IDENT.match(name) or name in ("true", "false"):
                raise UnknownAtom(f"invalid atom name {name!r}")
            if name in seen:
                raise DuplicateAtom(f"atom {name!r} appears more than once")
            seen.add(name)

    @cached_property
    def world_count(self) -> int:
        return 1 << len(self.atoms)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.world_count) - 1

    def index_of(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise UnknownAtom(f"unknown atom {name!r}") from None

    def atom(self, name: str) -> "Proposition":
        return Proposition(self, _atom_mask(len(self.atoms), self.index_of(name)))

    def top(self) -> "Proposition":
        return Proposition(self, self.full_mask)

    def bottom(self) -> "Proposition":
        return Proposition(self, 0)

    def world(self, k: int) -> "Proposition":
        """The proposition true in world ``k`` only."""
        if not 0 <= k < self.world_count:
            raise ValueError(f"world {k} outside 0..{self.world_count - 1}")
        return Proposition(self, 1 << k)

    def assignment(self, k: int) -> dict[str, bool]:
        return {name: bool(k >> i & 1) for i, name in enumerate(self.atoms)}

    def describe_world(self, k: int) -> str:
        return " & ".join(name if k >> i & 1 else "~" + name for i, name in enumerate(self.atoms))

    def propositions(self) -> Iterator["Proposition"]:
        """Every proposition of the space (2 ** world_count of them)."""
        for mask in range(1 << self.world_count):
            yield Proposition(self, mask)


def _atom_mask(n_atoms: int, i: int) -> int:
    half = 1 << i
    period = half << 1
    reps = (1 << n_atoms) >> (i + 1)
    block = ((1 << half) - 1) << half
    return block * (((1 << (period * reps)) - 1) // ((1 << period) - 1))


def build_space(atom_names: Sequence[str]) -> WorldSpace:
    return WorldSpace(tuple(atom_names))


@dataclass(frozen=True)
class Proposition:
    space: WorldSpace
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.space.full_mask:
            raise ValueError("world mask outside the space")

    def _check(self, other: "Proposition") -> None:
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space.atoms} vs {other.space.atoms}")

    def __invert__(self) -> "Proposition":
        return Proposition(self.space, self.space.full_mask ^ self.mask)

    def __and__(self, other: "Proposition") -> "Proposition":
        self._check(other)
        return Proposition(self.space, self.mask & other.mask)

    def __or__(self, other: "Proposition") -> "Proposition":
        self._check(other)
        return Proposition(self.space, self.mask | other.mask)

    def implies(self, other: "Proposition") -> "Proposition":
        """The material conditional, ``~self | other``."""
        return ~self | other

    def contains(self, world: int) -> bool:
        return bool(self.mask >> world & 1)

    @cached_property
    def worlds(self) -> frozenset[int]:
        return frozenset(self.iter_worlds())

    def iter_worlds(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def __repr__(self):
        return f"Proposition({sorted(self.iter_worlds())} over {list(self.space.atoms)})"


def entails(p: Proposition, q: Proposition) -> bool:
    p._check(q)
    return p.mask & ~q.mask == 0


# -- formula parser ---------------------------------------------------------
#
#   implication := disjunction ( "->" implication )?
#   disjunction := conjunction ( "|" conjunction )*
#   conjunction := unary ( "&" unary )*
#   unary       := "~" unary | "(" implication ")" | "true" | "false" | atom

_TOKEN = re.compile(r"->|[~&|()]|[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, space, bindings):
        self.tokens = _tokenize(text)
        self.i = 0
        self.space = space
        self.bindings = bindings or {}

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, expected=None):
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            what = repr(tok) if tok else "end of input"
            raise FormulaSyntaxError(f"expected {expected!r}, found {what}", pos)
        self.i += 1
        return tok, pos

    def parse(self):
        result = self.implication()
        tok, pos = self.tokens[self.i]
        if tok:
            raise FormulaSyntaxError(f"unexpected {tok!r}", pos)
        return result

    def implication(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return left.implies(self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = left | self.conjunction()
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = left & self.unary()
        return left

    def unary(self):
        tok, pos = self.take()
        if tok == "~":
            return ~self.unary()
        if tok == "(":
            inner = self.implication()
            self.take(")")
            return inner
        if tok == "true":
            return self.space.top()
        if tok == "false":
            return self.space.bottom()
        if tok and (tok[0].isalpha() or tok[0] == "_"):
            if tok in self.space.atoms:
                return self.space.atom(tok)
            if tok in self.bindings:
                bound = self.bindings[tok]
                if bound.space != self.space:
                    raise SpaceMismatch(f"binding {tok!r} belongs to another space")
                return bound
            raise UnknownAtom(f"unknown atom {tok!r} at position {pos}")
        raise FormulaSyntaxError(f"unexpected {tok!r}" if tok else "unexpected end of input", pos)


def parse_formula(
    text: str,
    space: WorldSpace,
    bindings: Optional[Mapping[str, Proposition]] = None,
) -> Proposition:
    """Parse ``text`` into the set of worlds satisfying it.

    Identifiers resolve to atoms first, then to ``bindings``.
    """
    return _Parser(text, space, bindings).parse()
