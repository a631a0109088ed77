"""Evidence e(b -> a), mutual evidence, and a threshold ledger."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .circumstance import Circumstance, cond_prob, judge, prob
from .errors import NonFiniteContribution
from .info import Bits, log2_ratio
from .props import Proposition


def evidence(c: Circumstance, b: Proposition, a: Proposition) -> Bits:
    """e(b -> a) = log2 P(b|a) - log2 P(b|~a), in bits.

    Both ``a`` and ``~a`` must be conceivable; the conditionals may come
    from deeper tiers when either has probability zero.  If both are 0
    the result is inf - inf and IndeterminateForm is raised.
    """
    given_a = cond_prob(c, b, a)
    given_not_a = cond_prob(c, b, ~a)
    if given_a and given_not_a:
        return log2_ratio(given_a / given_not_a)
    return log2_ratio(given_a) - log2_ratio(given_not_a)


def mutual_evidence(c: Circumstance, a: Proposition, b: Proposition) -> Bits:
    """e_m(a; b) = e(b -> a) - e(~b -> a)."""
    ps = [cond_prob(c, b, a), cond_prob(c, ~b, ~a), cond_prob(c, b, ~a), cond_prob(c, ~b, a)]
    if all(ps):
        # one log of the odds ratio, so swapping a and b is exact
        return log2_ratio(ps[0] * ps[1] / (ps[2] * ps[3]))
    return evidence(c, b, a) - evidence(c, ~b, a)


def log_odds(c: Circumstance, h: Proposition) -> Bits:
    """log2 P(h)/P(~h), infinite when h is believed or disbelieved."""
    p = prob(c, h)
    if p == 0:
        return Bits(-math.inf)
    if p == 1:
        return Bits(math.inf)
    return log2_ratio(p / (1 - p))


@dataclass(frozen=True)
class EvidenceLedger:
    """Accumulated evidence e_a for one hypothesis.

    Kept apart from the circumstance: while P(h) is 0 or 1 its log-odds
    are infinite and cannot register new observations.
    """

    hypothesis: Proposition
    threshold: float
    accumulated: Bits = Bits(0.0)
    history: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if not self.threshold > 0 or math.isinf(self.threshold):
            raise ValueError(f"threshold must be a positive finite number of bits, got {self.threshold}")

    @property
    def ready(self) -> bool:
        return self.accumulated >= self.threshold


def ledger_observe(ledger: EvidenceLedger, contribution: float) -> EvidenceLedger:
    if not math.isfinite(contribution):
        raise NonFiniteContribution(f"contribution {contribution} is not finite")
    history = ledger.history + (float(contribution),)
    return replace(ledger, accumulated=Bits(math.fsum(history)), history=history)


def ledger_maybe_judge(ledger: EvidenceLedger, c: Circumstance):
    """Judge the hypothesis once the threshold is reached.

    Returns ``(circumstance, fired, ledger)``; a firing ledger is reset to
    zero but stays usable for later (possibly opposite) evidence.
    """
    if ledger.ready:
        judged = judge(c, ledger.hypothesis)
        return judged, True, replace(ledger, accumulated=Bits(0.0), history=())
    # still raise Inconceivable early if the hypothesis could never be judged
    cond_prob(c, ledger.hypothesis, ledger.hypothesis)
    return c, False, ledger
