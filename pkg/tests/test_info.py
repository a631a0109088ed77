import math
from fractions import Fraction as F
from itertools import product

import pytest

from judgment_calc import (
    build_space,
    common_info,
    cond_info,
    cond_prob,
    decompose_common,
    from_weights,
    independent_consequence,
    info,
    lift,
    parse_formula,
    prob,
    sign_pattern,
)
from judgment_calc.errors import (
    DegenerateInput,
    IndeterminateForm,
    NotNegativelyCorrelated,
    NotPositivelyCorrelated,
    ProbabilitySumExceedsOne,
)
from judgment_calc.fixtures import AB_SPACE, e1, e2
from judgment_calc.info import Bits, log2_ratio

E1, E2 = e1(), e2()
TOL = 1e-9


def p(text, space=AB_SPACE):
    return parse_formula(text, space)


def joint(pab, pa, pb):
    """Two-atom circumstance from P(ab), P(a), P(b)."""
    return from_weights(AB_SPACE, {w: x for w, x in {
        3: pab, 1: pa - pab, 2: pb - pab, 0: 1 - pa - pb + pab}.items() if x})


def test_bits_arithmetic():
    inf = Bits(math.inf)
    assert inf + Bits(1) == math.inf
    assert Bits(3) - Bits(1) == 2
    with pytest.raises(IndeterminateForm):
        inf - inf
    with pytest.raises(IndeterminateForm):
        inf + Bits(-math.inf)
    assert not inf.is_finite
    assert log2_ratio(F(1, 2 ** 2000)) == -2000


def test_info_examples():
    assert info(E1, p("a")) == pytest.approx(1.0, abs=TOL)
    quarter = from_weights(AB_SPACE, {0: F(1, 4), 1: F(1, 4), 2: F(1, 4), 3: F(1, 4)})
    assert info(quarter, p("a & b")) == pytest.approx(2.0, abs=TOL)
    assert info(E1, AB_SPACE.top()) == 0
    assert info(E2, p("a")) == math.inf


def test_cond_info_examples():
    assert cond_info(E1, p("b"), p("a")) == pytest.approx(math.log2(5), abs=TOL)
    assert cond_info(E2, p("b"), p("a")) == pytest.approx(math.log2(4 / 3), abs=TOL)
    assert cond_info(E1, p("a"), p("a")) == 0


def test_common_info_examples():
    assert common_info(E1, p("a"), p("b")) == pytest.approx(-1.0, abs=TOL)
    indep = joint(F(1, 6), F(1, 2), F(1, 3))
    assert common_info(indep, p("a"), p("b")) == 0
    # i(~a; b | ~a) = i(b | ~a)
    assert common_info(E1, p("~a"), p("b | ~a")) == pytest.approx(info(E1, p("b | ~a")), abs=TOL)
    assert info(E1, p("b | ~a")) == pytest.approx(math.log2(5 / 3), abs=TOL)
    with pytest.raises(IndeterminateForm):
        common_info(E2, p("a"), p("b"))
    assert common_info(E1, p("a & ~b"), p("a & b")) == -math.inf


def test_sign_pattern_examples():
    s = sign_pattern(E1, p("a"), p("b"))
    assert sorted(s.negative) == ["a;b", "~a;~b"]
    assert sorted(s.positive) == ["a;~b", "~a;b"]
    mirror = sign_pattern(E1, p("a"), p("~b"))
    assert len(mirror.negative) == 2 and len(mirror.positive) == 2
    with pytest.raises(DegenerateInput):
        sign_pattern(joint(F(1, 6), F(1, 2), F(1, 3)), p("a"), p("b"))
    with pytest.raises(DegenerateInput):
        sign_pattern(E2, p("a"), p("b"))


def check_decomposition(c, a, b):
    ext, C, D, E = decompose_common(c, a, b)
    la, lb = lift(a, ext.space), lift(b, ext.space)
    for x in (C, D, E):
        for y in (C, D, E):
            if x != y:
                assert prob(ext, x & y) == prob(ext, x) * prob(ext, y)
    assert prob(ext, C & D & E) == prob(ext, C) * prob(ext, D) * prob(ext, E)
    live = ext.conceivable
    assert la & live == C & D & live
    assert lb & live == D & E & live
    assert info(ext, D) == pytest.approx(common_info(c, a, b), abs=TOL)
    for x in c.space.propositions():
        assert prob(ext, lift(x, ext.space)) == prob(c, x)
    return ext, C, D, E


def test_decompose_examples():
    c = joint(F(3, 8), F(1, 2), F(1, 2))
    ext, C, D, E = check_decomposition(c, p("a"), p("b"))
    assert (prob(ext, C), prob(ext, D), prob(ext, E)) == (F(3, 4), F(2, 3), F(3, 4))
    assert info(ext, D) == pytest.approx(math.log2(3 / 2), abs=TOL)

    with pytest.raises(NotPositivelyCorrelated):
        decompose_common(E1, p("a"), p("b"))

    ext, C, D, E = check_decomposition(E1, p("a"), p("a"))
    assert info(ext, D) == pytest.approx(1.0, abs=TOL)
    assert prob(ext, C) == prob(ext, E) == 1


def check_consequence(c, a, b):
    ext, C = independent_consequence(c, a, b)
    la, lb = lift(a, ext.space), lift(b, ext.space)
    assert prob(ext, la & C) == prob(ext, la) * prob(ext, C)
    assert prob(ext, lb & C) == prob(ext, lb) * prob(ext, C)
    assert (la & lb & ext.conceivable) & ~C == ext.space.bottom()
    assert cond_prob(ext, la & lb, C) == prob(c, a) * prob(c, b)
    assert info(ext, C) == pytest.approx(-common_info(c, a, b), abs=TOL)
    return ext, C


def test_independent_consequence_examples():
    a, b = p("a"), p("b")
    ext, C = check_consequence(E1, a, b)
    la, lb = lift(a, ext.space), lift(b, ext.space)
    assert prob(ext, C) == F(1, 2)
    assert prob(ext, la & ~lb & C) == F(3, 20)
    assert prob(ext, ~la & lb & C) == F(1, 10)
    assert prob(ext, ~la & ~lb & C) == F(3, 20)

    c = joint(F(1, 5), F(1, 2), F(1, 2))
    ext, C = check_consequence(c, a, b)
    la, lb = lift(a, ext.space), lift(b, ext.space)
    assert prob(ext, C) == F(4, 5)
    assert prob(ext, ~la & ~lb & C) == F(1, 5) == prob(c, ~a & ~b)

    with pytest.raises(NotNegativelyCorrelated):
        independent_consequence(joint(F(3, 8), F(1, 2), F(1, 2)), a, b)
    with pytest.raises(ProbabilitySumExceedsOne):
        independent_consequence(joint(F(1, 2), F(3, 4), F(3, 4)), a, b)


def test_boundary_cell_is_feasible():
    # the ~a~b cell is filled exactly to its total
    c = joint(F(1, 100), F(1, 2), F(1, 2))
    ext, C = check_consequence(c, p("a"), p("b"))
    na, nb = lift(p("~a"), ext.space), lift(p("~b"), ext.space)
    assert prob(ext, na & nb & C) == prob(ext, na & nb) == F(1, 100)


def test_grid_of_correlated_pairs():
    """Every interior two-atom law on a 1/12 grid, checked construction by construction."""
    a, b = p("a"), p("b")
    den = 12
    for n3, n1, n2 in product(range(1, den), repeat=3):
        n0 = den - n3 - n1 - n2
        if n0 < 1:
            continue
        c = from_weights(AB_SPACE, {3: F(n3, den), 1: F(n1, den), 2: F(n2, den), 0: F(n0, den)})
        ci = common_info(c, a, b)
        if ci > 0:
            check_decomposition(c, a, b)
        elif ci < 0:
            # one of (a, b) and (~a, ~b) always has P-sum <= 1, and the
            # precondition alone guarantees every cell is feasible
            pair = (a, b) if prob(c, a) + prob(c, b) <= 1 else (~a, ~b)
            check_consequence(c, *pair)


def test_three_atom_space():
    space = build_space(["x", "y", "z"])
    c = from_weights(space, {w: F(w + 1, 36) for w in range(8)})
    a, b = parse_formula("x | y", space), parse_formula("y | z", space)
    assert common_info(c, a, b) > 0
    check_decomposition(c, a, b)
