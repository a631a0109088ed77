import json
import math
from fractions import Fraction as F

import pytest

from judgment_calc import cond_prob, evidence, info, judge, prob
from judgment_calc.errors import ConfigInvalid
from judgment_calc.scenarios import (
    CoinScenarioConfig,
    RavenScenarioConfig,
    coin_circumstance,
    raven_circumstance,
    run_coin,
    run_raven,
    run_scenario,
)

TOL = 1e-9
LOG9 = math.log2(9)


def q(report, label, key):
    return report.step(label).quantities[key]


def test_coin_two_heads_even_prior():
    report = run_coin(CoinScenarioConfig())
    assert q(report, "toss 2", "log-odds(H)") == pytest.approx(2 * LOG9, abs=TOL)
    assert q(report, "toss 1", "contribution") == pytest.approx(LOG9, abs=TOL)


def test_coin_zero_prior_fires():
    report = run_coin(CoinScenarioConfig(prior_heads_hypothesis=F(0)))
    assert q(report, "toss 1", "judgment fired") is False
    assert q(report, "toss 2", "judgment fired") is True
    assert q(report, "toss 2", "P(next heads)") == F(9, 10)
    assert q(report, "prior", "P(H)") == 0
    # P(H) = 0 blocks the log-odds, so the ledger carries the evidence
    assert q(report, "toss 1", "log-odds(H)") == -math.inf
    assert q(report, "toss 2", "e_a(H)") == pytest.approx(2 * LOG9, abs=TOL)


def test_coin_heads_tails_cancel():
    report = run_coin(CoinScenarioConfig(toss_sequence=("H", "T")))
    assert q(report, "toss 2", "e_a(H)") == pytest.approx(0.0, abs=TOL)
    assert q(report, "toss 2", "log-odds(H)") == pytest.approx(0.0, abs=TOL)


def test_coin_additivity():
    seq = ("H", "T", "H", "H", "T", "H")
    report = run_coin(CoinScenarioConfig(prior_heads_hypothesis=F(1, 5), threshold_bits=100.0, toss_sequence=seq))
    prior = math.log2(F(1, 5) / F(4, 5))
    total = prior + sum(q(report, f"toss {k}", "contribution") for k in range(1, len(seq) + 1))
    assert q(report, f"toss {len(seq)}", "log-odds(H)") == pytest.approx(total, abs=TOL)


def test_coin_factorization_and_tiers():
    c = coin_circumstance(F(9, 10), F(1, 2), 3)
    h = c.space.atom("H")
    tosses = [c.space.atom(f"toss_{k}") for k in (1, 2, 3)]
    assert cond_prob(c, tosses[0] & tosses[1], h) == F(81, 100)
    assert cond_prob(c, tosses[0] & tosses[1], ~h) == F(1, 100)
    zero = coin_circumstance(F(9, 10), F(0), 1)
    assert len(zero.tiers) == 2 and prob(zero, zero.space.atom("H")) == 0
    assert cond_prob(zero, zero.space.atom("toss_1"), zero.space.atom("H")) == F(9, 10)


def test_coin_config_validation():
    for bad in ({"bias": "1/2"}, {"bias": 1}, {"prior_heads_hypothesis": "3/2"},
                {"threshold_bits": 0}, {"toss_sequence": "HX"}, {"colour": "red"},
                {"toss_sequence": "H" * 13}, {"bias": "x"}):
        with pytest.raises(ConfigInvalid):
            CoinScenarioConfig.from_dict(bad)
    assert CoinScenarioConfig.from_dict({"toss_sequence": "HT"}).toss_sequence == ("H", "T")


def test_raven_defaults():
    report = run_raven(RavenScenarioConfig())
    assert q(report, "R given", "e(B->A|R)") == pytest.approx(1.0, abs=TOL)
    assert q(report, "R given", "e(B->A|R)") == 1.0
    assert q(report, "R given", "i(B|~AR)") == pytest.approx(1.0, abs=TOL)
    assert q(report, "N judged, R given", "e(B->N|R)") == 0
    assert q(report, "N judged, B given", "e(R->N|B)") == 0
    assert q(report, "N judged, R given", "i(N) lower bound") == math.inf
    step = report.step("N judged, R given").quantities
    assert step["P(B) before"] == step["P(B) after"]
    step = report.step("N judged, B given").quantities
    assert step["P(R) before"] == step["P(R) after"]
    assert all(report.step("summary").quantities.values())


@pytest.mark.parametrize("beta", [F(1, 3), F(1, 2), F(3, 4), F(9, 10)])
def test_raven_evidence_is_log_inverse_beta(beta):
    report = run_raven(RavenScenarioConfig(lawless_black_prior=beta))
    assert q(report, "R given", "e(B->A|R)") == pytest.approx(math.log2(1 / beta), abs=TOL)
    assert q(report, "R given", "e(B->A|R)") > 0


def test_raven_model_by_enumeration():
    config = RavenScenarioConfig(object_count=3)
    c = raven_circumstance(config)
    A = c.space.atom("A")
    r0, b0 = c.space.atom("raven_0"), c.space.atom("black_0")
    r1 = c.space.atom("raven_1")
    assert prob(c, r0) == F(3, 10)
    assert prob(c, r0 & r1) == F(9, 100)
    assert cond_prob(c, b0, A & r0) == 1
    assert cond_prob(c, b0, A & ~r0) == F(1, 2)
    assert cond_prob(c, b0, ~A & r0) == F(1, 2)
    given_r = judge(c, r0)
    assert evidence(given_r, b0, A) == pytest.approx(info(given_r, b0 & ~A) - info(given_r, ~A), abs=TOL)


def test_raven_zero_law_prior():
    config = RavenScenarioConfig(law_prior=F(0))
    c = raven_circumstance(config)
    A, r0, b0 = (c.space.atom(n) for n in ("A", "raven_0", "black_0"))
    assert prob(c, A) == 0
    assert cond_prob(judge(c, A), b0, r0) == 1
    assert cond_prob(c, b0, r0 & A) == 1
    report = run_raven(config)
    assert q(report, "A judged", "P(B|R) after A") == 1


def test_raven_config_validation():
    for bad in ({"object_count": 0}, {"object_count": 9}, {"object_count": 1.5},
                {"raven_prior": 0}, {"lawless_black_prior": 1}, {"law_prior": 1}, {"x": 1}):
        with pytest.raises(ConfigInvalid):
            RavenScenarioConfig.from_dict(bad)


def test_reports_render():
    for kind in ("coin", "raven"):
        report = run_scenario(kind, {})
        text = report.to_text()
        assert "bits" in text and "1/1" not in text
        doc = json.loads(json.dumps(report.to_json()))
        assert doc["steps"][0]["label"] == "prior"
    with pytest.raises(ConfigInvalid):
        run_scenario("dice", {})
