"""Command-line front end.

Every subcommand acts on a session file.  The session path is the first
positional argument; when ``JUDGMENT_CALC_SESSION`` is set it may be
omitted.  Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .circumstance import Circumstance, Tier, cond_prob, from_dict, lift, prob, to_dict, uniform
from .errors import JudgmentError
from .evidence import evidence, mutual_evidence
from .fixtures import FIXTURES
from .implication import ImplicationMode, min_info_T, transport_for
from .info import common_info, info
from .props import Proposition, build_space, parse_formula
from .scenarios import format_bits, run_scenario
from .session import Session, load_session, resolve, save_session

ENV_SESSION = "JUDGMENT_CALC_SESSION"


class UsageError(Exception):
    pass


def rational(x: Fraction) -> str:
    return str(Fraction(x))


# -- shared command logic (also used by the REPL) ------------------------------


def headline_names(session: Session, space) -> list[str]:
    return list(space.atoms) + [n for n in session.bindings if n not in space.atoms]


def headline_changes(session: Session, before: Circumstance, after: Circumstance) -> list[str]:
    """``P(x): old -> new`` for every atom and binding whose probability moved."""
    lines = []
    for name in headline_names(session, before.space):
        try:
            p_before = session_parse(session, before, name)
        except JudgmentError:
            continue
        p_after = lift(p_before, after.space) if after.space != before.space else p_before
        old, new = prob(before, p_before), prob(after, p_after)
        if old != new:
            lines.append(f"P({name}): {rational(old)} -> {rational(new)}")
    if after.space != before.space:
        for name in after.space.atoms[len(before.space.atoms):]:
            lines.append(f"P({name}) = {rational(prob(after, after.space.atom(name)))}  (new atom)")
    if not lines:
        lines.append("no unconditional probability changed")
    return lines


def session_parse(session: Session, c: Circumstance, text: str) -> Proposition:
    return resolve(c, text, session.bindings)


def run_judge(session: Session, formula: str) -> list[str]:
    before, after = session.apply({"op": "judge", "formula": formula})
    return headline_changes(session, before, after)


def run_imply(
    session: Session,
    a_text: str,
    b_text: str,
    mode: str,
    apply: bool = False,
    construct: bool = False,
    info_t: Optional[float] = None,
    t_name: str = "T",
) -> list[str]:
    c = session.current
    a, b = session.parse(a_text), session.parse(b_text)
    mode = ImplicationMode(mode)
    if construct:
        if info_t is None:
            raise UsageError("--construct-t needs --info-t <bits>")
        before, after = session.apply(
            {"op": "construct_t", "a": a_text, "b": b_text, "mode": mode.value, "info_t": info_t, "name": t_name})
        t = after.space.atom(t_name)
        la, lb = lift(a, after.space), lift(b, after.space)
        return [
            f"P({t_name}) = {rational(prob(after, t))}",
            f"i({t_name}) = {format_bits(info(after, t))}",
            f"P(a|{t_name}) = {rational(cond_prob(after, la, t))}",
            f"P(b|{t_name}) = {rational(cond_prob(after, lb, t))}",
            f"P(ab|~{t_name}) = {rational(cond_prob(after, la & lb, ~t))}" if prob(after, t) < 1 else
            f"P(~{t_name}) = 0",
        ]
    if apply:
        before, after = session.apply({"op": "imply", "a": a_text, "b": b_text, "mode": mode.value})
        return [
            f"P({a_text}): {rational(prob(before, a))} -> {rational(prob(after, a))}",
            f"P({b_text}): {rational(prob(before, b))} -> {rational(prob(after, b))}",
            f"P({b_text} | {a_text}): {rational(cond_prob(before, b, a))} -> {rational(cond_prob(after, b, a))}",
        ]
    t = transport_for(c, a, b, mode)
    return [
        f"mode {mode.value}",
        f"m(ab) = {rational(t.ab)}",
        f"m(a~b) = {rational(t.a_nb)}",
        f"m(~ab) = {rational(t.na_b)}",
        f"m(~a~b) = {rational(t.na_nb)}",
        f"new P(a) = {rational(t.ab + t.a_nb)}",
        f"new P(b) = {rational(t.ab + t.na_b)}",
        f"minimal i(T) = {format_bits(min_info_T(c, a, b, mode))}",
    ]


def run_counterfactual(session: Session, a_text: str, b_text: str) -> list[str]:
    a, b = session.parse(a_text), session.parse(b_text)
    before, after = session.apply({"op": "counterfactual", "a": a_text, "b": b_text})
    return [f"P({b_text} | {a_text}): {rational(cond_prob(before, b, a))} -> {rational(cond_prob(after, b, a))}"] + \
        headline_changes(session, before, after)


def split_arrow(text: str) -> tuple[str, str]:
    """Split ``f1 -> f2`` at the first top-level arrow."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith("->", i):
            left, right = text[:i].strip(), text[i + 2:].strip()
            if left and right:
                return left, right
    raise UsageError("expected '<formula> -> <formula>'")


def parse_tier(space, text: str) -> dict[int, Fraction]:
    """``world:weight,...``; a world is a bitmask or a formula naming one world."""
    weights = {}
    for item in text.split(","):
        if not item.strip():
            continue
        if ":" not in item:
            raise UsageError(f"tier entry {item!r} is not world:weight")
        key, _, value = item.rpartition(":")
        key = key.strip()
        if key.isdigit():
            w = int(key)
        else:
            p = parse_formula(key, space)
            if len(p) != 1:
                raise UsageError(f"{key!r} names {len(p)} worlds, not one")
            w = next(p.iter_worlds())
        try:
            weights[w] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad weight {value!r}") from None
    return weights


# -- argparse wiring ---------------------------------------------------------------

# subcommand -> number of formula positionals after the session path
_ARITY = {
    "prob": 1, "cond-prob": 2, "info": 1, "common-info": 2, "evidence": 2, "mutual-evidence": 2,
    "judge": 1, "imply": 2, "counterfactual": 2, "decompose": 2, "indep-consequence": 2,
    "history": 0, "undo": 0, "repl": 0, "set-weights": 0, "bind": 2,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="judgment-calc", description="Judgment calculus over finite world spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="create a session file")
    p.add_argument("session", nargs="?")
    p.add_argument("--atoms", help="comma-separated atom names")
    p.add_argument("--uniform", action="store_true", help="uniform single tier (default)")
    p.add_argument("--fixture", choices=sorted(FIXTURES), help="start from a named fixture")

    help_text = {
        "prob": "P(f)", "cond-prob": "P(f1 | f2)", "info": "i(f) in bits", "common-info": "i(f1; f2)",
        "evidence": "e(f1 -> f2)", "mutual-evidence": "e_m(f1; f2)", "judge": "give a proposition",
        "imply": "judge that f1 implies f2", "counterfactual": "give ~f1 | f2 when P(f1) = 0",
        "decompose": "split common information into C, D, E",
        "indep-consequence": "add the independent consequence C",
        "history": "list the recorded judgments", "undo": "drop the last judgment",
        "repl": "interactive session", "set-weights": "replace the circumstance",
        "bind": "name a formula",
    }
    for name, arity in _ARITY.items():
        p = sub.add_parser(name, help=help_text[name])
        p.add_argument("args", nargs="*", metavar="ARG", help="[session] " + " ".join(f"f{i + 1}" for i in range(arity)))
        if name == "imply":
            p.add_argument("--mode", required=True, choices=[m.value for m in ImplicationMode])
            group = p.add_mutually_exclusive_group()
            group.add_argument("--apply", action="store_true")
            group.add_argument("--construct-t", action="store_true")
            p.add_argument("--info-t", type=float)
            p.add_argument("--t-name", default="T")
        if name == "decompose":
            p.add_argument("--names", default="C,D,E")
        if name == "indep-consequence":
            p.add_argument("--name", default="C")
        if name == "set-weights":
            p.add_argument("--tier", action="append", default=[], help="world:weight,... (repeat per tier)")
            p.add_argument("--from-json", help="circumstance JSON document")

    p = sub.add_parser("scenario", help="run a worked scenario")
    p.add_argument("kind", choices=["coin", "raven"])
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--json", dest="json_out", help="also write the report as JSON here")
    return parser


def _session_and_formulas(args: Sequence[str], arity: int) -> tuple[str, list[str]]:
    args = list(args)
    if len(args) == arity + 1:
        return args[0], args[1:]
    if len(args) == arity and os.environ.get(ENV_SESSION):
        return os.environ[ENV_SESSION], args
    raise UsageError(f"expected [session] and {arity} formula argument(s), got {len(args)} argument(s)")


def dispatch(ns: argparse.Namespace, out) -> int:
    cmd = ns.command
    if cmd == "scenario":
        doc = {}
        if ns.config:
            with open(ns.config) as fh:
                doc = json.load(fh)
        report = run_scenario(ns.kind, doc)
        print(report.to_text(), file=out)
        if ns.json_out:
            with open(ns.json_out, "w") as fh:
                json.dump(report.to_json(), fh, indent=2)
        return 0

    if cmd == "new":
        path = ns.session or os.environ.get(ENV_SESSION)
        if not path:
            raise UsageError("new needs a session path")
        if ns.fixture:
            c = FIXTURES[ns.fixture]()
        elif ns.atoms:
            c = uniform(build_space([a.strip() for a in ns.atoms.split(",")]))
        else:
            raise UsageError("new needs --atoms or --fixture")
        save_session(Session(c), path)
        print(f"created {path}: atoms {', '.join(c.space.atoms)}, {c.space.world_count} worlds", file=out)
        return 0

    path, f = _session_and_formulas(ns.args, _ARITY[cmd])
    session = load_session(path)
    c = session.current
    lines: list[str] = []
    changed = False

    if cmd == "prob":
        lines = [rational(prob(c, session.parse(f[0])))]
    elif cmd == "cond-prob":
        lines = [rational(cond_prob(c, session.parse(f[0]), session.parse(f[1])))]
    elif cmd == "info":
        lines = [format_bits(info(c, session.parse(f[0])))]
    elif cmd == "common-info":
        lines = [format_bits(common_info(c, session.parse(f[0]), session.parse(f[1])))]
    elif cmd == "evidence":
        lines = [format_bits(evidence(c, session.parse(f[0]), session.parse(f[1])))]
    elif cmd == "mutual-evidence":
        lines = [format_bits(mutual_evidence(c, session.parse(f[0]), session.parse(f[1])))]
    elif cmd == "judge":
        lines, changed = run_judge(session, f[0]), True
    elif cmd == "imply":
        lines = run_imply(session, f[0], f[1], ns.mode, ns.apply, ns.construct_t, ns.info_t, ns.t_name)
        changed = ns.apply or ns.construct_t
    elif cmd == "counterfactual":
        lines, changed = run_counterfactual(session, f[0], f[1]), True
    elif cmd == "decompose":
        names = [n.strip() for n in ns.names.split(",")]
        if len(names) != 3:
            raise UsageError("--names needs three atom names")
        a, b = session.parse(f[0]), session.parse(f[1])
        before, after = session.apply({"op": "decompose", "a": f[0], "b": f[1], "names": names})
        lines = [f"P({n}) = {rational(prob(after, after.space.atom(n)))}" for n in names]
        lines.append(f"i({names[1]}) = {format_bits(info(after, after.space.atom(names[1])))}")
        lines.append(f"i(a;b) = {format_bits(common_info(before, a, b))}")
        changed = True
    elif cmd == "indep-consequence":
        a, b = session.parse(f[0]), session.parse(f[1])
        before, after = session.apply({"op": "indep_consequence", "a": f[0], "b": f[1], "name": ns.name})
        lines = [
            f"P({ns.name}) = {rational(prob(after, after.space.atom(ns.name)))}",
            f"i({ns.name}) = {format_bits(info(after, after.space.atom(ns.name)))}",
            f"i(a;b) = {format_bits(common_info(before, a, b))}",
        ]
        changed = True
    elif cmd == "set-weights":
        if ns.from_json:
            with open(ns.from_json) as fh:
                new = from_dict(json.load(fh))
        elif ns.tier:
            new = Circumstance(c.space, tuple(Tier.normalized(parse_tier(c.space, t)) for t in ns.tier))
        else:
            raise UsageError("set-weights needs --tier or --from-json")
        before, after = session.apply({"op": "set", "circumstance": to_dict(new)})
        lines, changed = [f"{len(after.tiers)} tier(s) over {after.space.world_count} worlds"], True
    elif cmd == "bind":
        session.bind(f[0], f[1])
        lines, changed = [f"{f[0]} := {f[1]}  P = {rational(prob(c, session.parse(f[0])))}"], True
    elif cmd == "history":
        lines = format_history(session) or ["(empty history)"]
    elif cmd == "undo":
        op = session.undo()
        if op is None:
            lines = ["nothing to undo"]
        else:
            lines, changed = [f"undid {describe_op(op)}"], True
    elif cmd == "repl":
        from .repl import JudgmentRepl  # repl imports this module

        JudgmentRepl(session, path, stdout=out).cmdloop()
        return 0

    if changed:
        save_session(session, path)
    for line in lines:
        print(line, file=out)
    return 0


def describe_op(op: dict) -> str:
    kind = op["op"]
    if kind == "judge":
        return f"judge {op['formula']}"
    if kind == "set":
        return "set-weights"
    if kind in ("imply", "construct_t"):
        extra = f" --construct-t --info-t {op['info_t']}" if kind == "construct_t" else ""
        return f"imply {op['a']} {op['b']} --mode {op['mode']}{extra}"
    return f"{kind} {op['a']} {op['b']}"


def format_history(session: Session) -> list[str]:
    return [f"{i}. {describe_op(op)}" for i, op in enumerate(session.history, start=1)]


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return dispatch(ns, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except JudgmentError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
