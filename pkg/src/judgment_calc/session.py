"""Sessions: a starting circumstance plus a replayable history of judgments.

Undo pops the last history entry and replays the rest from the start, so
no operation needs a closed-form inverse.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from filelock import FileLock

from .circumstance import Circumstance, from_dict, judge, parse_rational, to_dict
from .errors import FormatVersionMismatch, InvalidCircumstance, JudgmentError, SessionFileNotFound
from .implication import ImplicationMode, apply_implication, construct_T, counterfactual_sufficient
from .info import decompose_common, independent_consequence
from .props import Proposition, parse_formula

FORMAT_VERSION = "judgment-calculus/1"


def resolve(c: Circumstance, text: str, bindings: dict[str, str]) -> Proposition:
    """Parse ``text``; bound names expand to their (re-parsed) formulas."""
    resolved: dict[str, Proposition] = {}
    for name, formula in bindings.items():
        if name in c.space.atoms:
            continue
        try:
            resolved[name] = parse_formula(formula, c.space, resolved)
        except JudgmentError:
            # binding mentions atoms this space lacks; unusable here
            continue
    return parse_formula(text, c.space, resolved)


def apply_op(c: Circumstance, op: dict, bindings: dict[str, str]) -> Circumstance:
    kind = op["op"]
    if kind == "set":
        return from_dict(op["circumstance"])
    if kind == "judge":
        return judge(c, resolve(c, op["formula"], bindings))
    a = resolve(c, op["a"], bindings)
    b = resolve(c, op["b"], bindings)
    if kind == "imply":
        return apply_implication(c, a, b, ImplicationMode(op["mode"]))
    if kind == "construct_t":
        p_t = parse_rational(op["p_t"]) if op.get("p_t") else None
        ext, _ = construct_T(c, a, b, ImplicationMode(op["mode"]), op.get("info_t"), p_t=p_t, name=op["name"])
        return ext
    if kind == "counterfactual":
        return counterfactual_sufficient(c, a, b)
    if kind == "decompose":
        ext, *_ = decompose_common(c, a, b, names=tuple(op["names"]))
        return ext
    if kind == "indep_consequence":
        ext, _ = independent_consequence(c, a, b, name=op["name"])
        return ext
    raise InvalidCircumstance(f"unknown history operation {kind!r}")


@dataclass
class Session:
    initial: Circumstance
    history: list[dict] = field(default_factory=list)
    bindings: dict[str, str] = field(default_factory=dict)
    current: Optional[Circumstance] = None

    def __post_init__(self):
        if self.current is None:
            self.current = self.replay()

    def replay(self, history: Optional[list[dict]] = None) -> Circumstance:
        c = self.initial
        for op in self.history if history is None else history:
            c = apply_op(c, op, self.bindings)
        return c

    def parse(self, text: str) -> Proposition:
        return resolve(self.current, text, self.bindings)

    def apply(self, op: dict) -> tuple[Circumstance, Circumstance]:
        """Run ``op`` and record it; returns (before, after)."""
        before = self.current
        after = apply_op(before, op, self.bindings)
        self.history.append(op)
        self.current = after
        return before, after

    def undo(self) -> Optional[dict]:
        if not self.history:
            return None
        op = self.history.pop()
        self.current = self.replay()
        return op

    def bind(self, name: str, formula: str) -> None:
        self.parse(formula)  # validate now
        self.bindings[name] = formula

    def to_dict(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "initial": to_dict(self.initial),
            "current": to_dict(self.current),
            "bindings": dict(self.bindings),
            "history": list(self.history),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Session":
        if doc.get("version") != FORMAT_VERSION:
            raise FormatVersionMismatch(f"expected {FORMAT_VERSION!r}, found {doc.get('version')!r}")
        try:
            session = cls(
                initial=from_dict(doc["initial"]),
                history=list(doc.get("history", [])),
                bindings=dict(doc.get("bindings", {})),
                current=from_dict(doc["current"]),
            )
        except KeyError as exc:
            raise InvalidCircumstance(f"session document lacks {exc}") from None
        if session.replay() != session.current:
            raise InvalidCircumstance("replaying the history does not reproduce the saved circumstance")
        return session


def save_session(session: Session, path) -> None:
    path = Path(path)
    text = json.dumps(session.to_dict(), indent=2) + "\n"
    with FileLock(str(path) + ".lock"):
        fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def load_session(path) -> Session:
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise SessionFileNotFound(f"no session file at {path}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidCircumstance(f"{path} is not JSON: {exc}") from None
    return Session.from_dict(doc)
