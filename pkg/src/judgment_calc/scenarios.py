"""Worked narratives: biased-coin evidence accumulation and the raven paradox."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Union

from .circumstance import Circumstance, Tier, cond_prob, format_rational, judge, lift, prob
from .errors import ConfigInvalid
from .evidence import EvidenceLedger, evidence, ledger_maybe_judge, ledger_observe, log_odds
from .implication import ImplicationMode, counterfactual_sufficient, judge_sufficient, judgment_atom, min_info_T
from .info import Bits, cond_info, log2_ratio
from .props import build_space

MAX_TOSSES = 12
MAX_OBJECTS = 8

Value = Union[Fraction, Bits, float, bool, int]


@dataclass
class Step:
    label: str
    quantities: dict[str, Value] = field(default_factory=dict)


@dataclass
class ScenarioReport:
    title: str
    steps: list[Step]
    circumstances: dict[str, Circumstance]

    @property
    def final(self) -> Circumstance:
        return list(self.circumstances.values())[-1]

    def step(self, label: str) -> Step:
        for s in self.steps:
            if s.label == label:
                return s
        raise KeyError(label)

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "steps": [
                {"label": s.label, "quantities": {k: _json_value(v) for k, v in s.quantities.items()}}
                for s in self.steps
            ],
        }

    def to_text(self) -> str:
        rows = [(s.label, name, format_value(v)) for s in self.steps for name, v in s.quantities.items()]
        w1 = max(len("step"), *(len(r[0]) for r in rows))
        w2 = max(len("quantity"), *(len(r[1]) for r in rows))
        lines = [self.title, f"{'step':<{w1}}  {'quantity':<{w2}}  value", "-" * (w1 + w2 + 20)]
        last = None
        for label, name, value in rows:
            shown = label if label != last else ""
            last = label
            lines.append(f"{shown:<{w1}}  {name:<{w2}}  {value}")
        return "\n".join(lines)


def format_bits(x: float) -> str:
    if math.isinf(x):
        return ("inf" if x > 0 else "-inf") + " bits"
    return f"{x + 0.0:.4f} bits"


def format_value(v: Value) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return format_bits(v)
    return str(v)


def _json_value(v: Value) -> Any:
    if isinstance(v, bool):
        return v
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(v)
    return v


def _fraction(value, name) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ConfigInvalid(f"{name} is not a rational number: {value!r}") from None


# -- biased coin --------------------------------------------------------------

_HEADS = {"H": True, "HEADS": True, "T": False, "TAILS": False}


@dataclass(frozen=True)
class CoinScenarioConfig:
    bias: Fraction = Fraction(9, 10)
    prior_heads_hypothesis: Fraction = Fraction(1, 2)
    threshold_bits: float = 6.0
    toss_sequence: tuple[str, ...] = ("H", "H")

    def __post_init__(self):
        if not Fraction(1, 2) < self.bias < 1:
            raise ConfigInvalid(f"bias must lie strictly between 1/2 and 1, got {self.bias}")
        if not 0 <= self.prior_heads_hypothesis <= 1:
            raise ConfigInvalid("prior_heads_hypothesis must lie in [0, 1]")
        if not self.threshold_bits > 0 or math.isinf(self.threshold_bits):
            raise ConfigInvalid("threshold_bits must be positive and finite")
        if len(self.toss_sequence) > MAX_TOSSES:
            raise ConfigInvalid(f"at most {MAX_TOSSES} tosses are enumerated")
        for t in self.toss_sequence:
            if str(t).upper() not in _HEADS:
                raise ConfigInvalid(f"toss {t!r} is not Heads/Tails")

    @classmethod
    def from_dict(cls, doc: Mapping) -> "CoinScenarioConfig":
        unknown = set(doc) - {"bias", "prior_heads_hypothesis", "threshold_bits", "toss_sequence"}
        if unknown:
            raise ConfigInvalid(f"unknown coin config keys: {sorted(unknown)}")
        kwargs = {}
        if "bias" in doc:
            kwargs["bias"] = _fraction(doc["bias"], "bias")
        if "prior_heads_hypothesis" in doc:
            kwargs["prior_heads_hypothesis"] = _fraction(doc["prior_heads_hypothesis"], "prior_heads_hypothesis")
        if "threshold_bits" in doc:
            try:
                kwargs["threshold_bits"] = float(doc["threshold_bits"])
            except (TypeError, ValueError):
                raise ConfigInvalid("threshold_bits must be a number") from None
        if "toss_sequence" in doc:
            seq = doc["toss_sequence"]
            if isinstance(seq, str):
                seq = list(seq)
            kwargs["toss_sequence"] = tuple(seq)
        return cls(**kwargs)


def coin_circumstance(bias: Fraction, prior: Fraction, n_tosses: int) -> Circumstance:
    """Hypothesis atom ``H`` plus ``n_tosses`` tosses and one ``toss_next``.

    Tosses are independent given H (heads with probability ``bias``) and
    given ~H (heads with probability ``1 - bias``).  A prior of 0 or 1
    puts the disbelieved half of the space in a second tier.
    """
    atoms = ["H"] + [f"toss_{k}" for k in range(1, n_tosses + 1)] + ["toss_next"]
    space = build_space(atoms)
    by_h = {True: {}, False: {}}
    for w in range(space.world_count):
        h = bool(w & 1)
        p_heads = bias if h else 1 - bias
        weight = Fraction(1)
        for k in range(1, len(atoms)):
            weight *= p_heads if w >> k & 1 else 1 - p_heads
        by_h[h][w] = weight
    if prior == 0:
        tiers = (Tier(by_h[False]), Tier(by_h[True]))
    elif prior == 1:
        tiers = (Tier(by_h[True]), Tier(by_h[False]))
    else:
        mixed = {w: x * prior for w, x in by_h[True].items()}
        mixed.update({w: x * (1 - prior) for w, x in by_h[False].items()})
        tiers = (Tier(dict(sorted(mixed.items()))),)
    return Circumstance(space, tiers)


def run_coin(config: CoinScenarioConfig = CoinScenarioConfig()) -> ScenarioReport:
    tosses = [_HEADS[str(t).upper()] for t in config.toss_sequence]
    c = coin_circumstance(config.bias, config.prior_heads_hypothesis, len(tosses))
    h = c.atom("H")
    nxt = c.atom("toss_next")
    per_head = log2_ratio(config.bias / (1 - config.bias))
    ledger = EvidenceLedger(h, config.threshold_bits)
    steps = [Step("prior", {
        "P(H)": prob(c, h),
        "log-odds(H)": log_odds(c, h),
        "e_a(H)": ledger.accumulated,
        "P(next heads)": prob(c, nxt),
    })]
    circumstances = {"prior": c}
    for k, heads in enumerate(tosses, start=1):
        toss = c.atom(f"toss_{k}")
        observed = toss if heads else ~toss
        contribution = evidence(c, observed, h)
        c = judge(c, observed)
        ledger = ledger_observe(ledger, contribution)
        q = {
            "outcome": "heads" if heads else "tails",
            "contribution": contribution,
            "nominal contribution": per_head if heads else -per_head,
            "log-odds(H)": log_odds(c, h),
            "e_a(H)": ledger.accumulated,
        }
        c, fired, ledger = ledger_maybe_judge(ledger, c)
        q["judgment fired"] = fired
        q["P(H)"] = prob(c, h)
        q["P(next heads)"] = prob(c, nxt)
        label = f"toss {k}"
        steps.append(Step(label, q))
        circumstances[label] = c
    return ScenarioReport("biased coin", steps, circumstances)


# -- raven paradox --------------------------------------------------------------


@dataclass(frozen=True)
class RavenScenarioConfig:
    object_count: int = 2
    raven_prior: Fraction = Fraction(3, 10)
    lawless_black_prior: Fraction = Fraction(1, 2)
    law_prior: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if not isinstance(self.object_count, int) or not 1 <= self.object_count <= MAX_OBJECTS:
            raise ConfigInvalid(f"object_count must be an integer in 1..{MAX_OBJECTS}")
        if not 0 < self.raven_prior < 1:
            raise ConfigInvalid("raven_prior must lie strictly between 0 and 1")
        if not 0 < self.lawless_black_prior < 1:
            raise ConfigInvalid("lawless_black_prior must lie strictly between 0 and 1")
        if not 0 <= self.law_prior < 1:
            raise ConfigInvalid("law_prior must lie in [0, 1)")

    @classmethod
    def from_dict(cls, doc: Mapping) -> "RavenScenarioConfig":
        keys = {"object_count", "raven_prior", "lawless_black_prior", "law_prior"}
        unknown = set(doc) - keys
        if unknown:
            raise ConfigInvalid(f"unknown raven config keys: {sorted(unknown)}")
        kwargs = {k: _fraction(doc[k], k) for k in keys - {"object_count"} if k in doc}
        if "object_count" in doc:
            if isinstance(doc["object_count"], bool) or not isinstance(doc["object_count"], int):
                raise ConfigInvalid("object_count must be an integer")
            kwargs["object_count"] = doc["object_count"]
        return cls(**kwargs)


def raven_circumstance(config: RavenScenarioConfig) -> Circumstance:
    """Law atom ``A`` plus ``raven_i``/``black_i`` for each object.

    Objects are ravens independently.  Under A every raven is black and
    other objects are black with probability beta; under ~A every object
    is black with probability beta.  Object 0 plays Socrates.
    """
    n = config.object_count
    atoms = ["A"]
    for i in range(n):
        atoms += [f"raven_{i}", f"black_{i}"]
    space = build_space(atoms)
    r, beta = config.raven_prior, config.lawless_black_prior
    by_law = {True: {}, False: {}}
    for w in range(space.world_count):
        law = bool(w & 1)
        weight = Fraction(1)
        for i in range(n):
            raven = w >> (1 + 2 * i) & 1
            black = w >> (2 + 2 * i) & 1
            weight *= r if raven else 1 - r
            p_black = 1 if (law and raven) else beta
            weight *= p_black if black else 1 - p_black
            if weight == 0:
                break
        if weight:
            by_law[law][w] = weight
    if config.law_prior == 0:
        tiers = (Tier(by_law[False]), Tier(by_law[True]))
    else:
        p = config.law_prior
        mixed = {w: x * p for w, x in by_law[True].items()}
        mixed.update({w: x * (1 - p) for w, x in by_law[False].items()})
        tiers = (Tier(dict(sorted(mixed.items()))),)
    return Circumstance(space, tiers)


def run_raven(config: RavenScenarioConfig = RavenScenarioConfig()) -> ScenarioReport:
    c = raven_circumstance(config)
    law, raven, black = c.atom("A"), c.atom("raven_0"), c.atom("black_0")
    steps = [Step("prior", {
        "P(A)": prob(c, law),
        "P(R)": prob(c, raven),
        "P(B)": prob(c, black),
    })]
    circumstances = {"prior": c}

    # Socrates is a raven; does his being black favour A?
    c_r = judge(c, raven)
    e_ba = evidence(c_r, black, law)
    steps.append(Step("R given", {
        "P(B|R)": prob(c_r, black),
        "P(B|AR)": cond_prob(c_r, black, law),
        "P(B|~AR)": cond_prob(c_r, black, ~law),
        "e(B->A|R)": e_ba,
        "i(B|~AR)": cond_info(c, black, ~law & raven),
        "log2(1/beta)": log2_ratio(1 / config.lawless_black_prior),
    }))
    circumstances["R given"] = c_r

    # N after R: "if not black then not a raven", subject ~B
    c_rn = judge_sufficient(c_r, ~black, ~raven)
    e_bn = evidence(judgment_atom(c_r, c_rn, "N"), _lift_last(black), _n_atom(c_r))
    steps.append(Step("N judged, R given", {
        "i(N) lower bound": min_info_T(c_r, ~black, ~raven, ImplicationMode.SUFFICIENT),
        "P(B) before": prob(c_r, black),
        "P(B) after": prob(c_rn, black),
        "P(R) before": prob(c_r, raven),
        "P(R) after": prob(c_rn, raven),
        "e(B->N|R)": e_bn,
    }))
    circumstances["N judged, R given"] = c_rn

    # the same N judgment when B is given instead: now a counterfactual
    c_b = judge(c, black)
    c_bn = counterfactual_sufficient(c_b, ~black, ~raven)
    e_rn = evidence(judgment_atom(c_b, c_bn, "N"), _lift_last(raven), _n_atom(c_b))
    steps.append(Step("N judged, B given", {
        "P(B) before": prob(c_b, black),
        "P(B) after": prob(c_bn, black),
        "P(R) before": prob(c_b, raven),
        "P(R) after": prob(c_bn, raven),
        "e(R->N|B)": e_rn,
    }))
    circumstances["B given"] = c_b
    circumstances["N judged, B given"] = c_bn

    c_a = judge(c, law)
    steps.append(Step("A judged", {
        "P(B|R) after A": cond_prob(c_a, black, raven),
        "P(R) after A": prob(c_a, raven),
    }))
    circumstances["A judged"] = c_a

    steps.append(Step("summary", {
        "e(B->A|R) > 0": e_ba > 0,
        "e(B->N|R) = 0": e_bn == 0,
        "e(R->N|B) = 0": e_rn == 0,
    }))
    return ScenarioReport("raven paradox", steps, circumstances)


def _lift_last(p):
    return lift(p, build_space(p.space.atoms + ("N",)))


def _n_atom(c):
    return build_space(c.space.atoms + ("N",)).atom("N")


def run_scenario(kind: str, doc: Mapping) -> ScenarioReport:
    if kind == "coin":
        return run_coin(CoinScenarioConfig.from_dict(doc))
    if kind == "raven":
        return run_raven(RavenScenarioConfig.from_dict(doc))
    raise ConfigInvalid(f"unknown scenario {kind!r}")
