import pytest
from hypothesis import given
from hypothesis import strategies as st

from judgment_calc import build_space, entails, parse_formula
from judgment_calc.errors import (
    DuplicateAtom,
    EmptyAtomList,
    FormulaSyntaxError,
    SpaceMismatch,
    TooManyAtoms,
    UnknownAtom,
)
from judgment_calc.props import MAX_ATOMS, Proposition

from oracle import truth_table

AB = build_space(["a", "b"])


def test_world_counts():
    assert AB.world_count == 4
    assert build_space(["r", "b", "h"]).world_count == 8


def test_world_indexing_is_bit_positional():
    space = build_space(["x", "y", "z"])
    assert space.assignment(0b101) == {"x": True, "y": False, "z": True}
    assert space.atom("y").worlds == frozenset(k for k in range(8) if k & 2)


@pytest.mark.parametrize("names, error", [
    (["a", "a"], DuplicateAtom),
    ([], EmptyAtomList),
    ([f"x{i}" for i in range(MAX_ATOMS + 1)], TooManyAtoms),
    (["ok", "not ok"], UnknownAtom),
    (["true"], UnknownAtom),
])
def test_build_space_rejects(names, error):
    with pytest.raises(error):
        build_space(names)


def test_max_atoms_allowed():
    assert build_space([f"x{i}" for i in range(MAX_ATOMS)]).world_count == 2 ** MAX_ATOMS


def test_examples():
    a_not_b = parse_formula("a & ~b", AB)
    assert a_not_b.worlds == {1}
    assert len(parse_formula("b | ~a", AB)) == 3
    assert parse_formula("b | ~a", AB).worlds == {0, 2, 3}
    assert parse_formula("a -> b", AB) == parse_formula("~a | b", AB)


def test_precedence_and_associativity():
    # ~ over &, & over |, | over ->, -> to the right
    assert parse_formula("~a & b", AB) == (~AB.atom("a")) & AB.atom("b")
    assert parse_formula("a | a & b", AB) == AB.atom("a")
    assert parse_formula("a -> b -> a", AB) == AB.top()
    assert parse_formula("(a -> b) -> a", AB) == AB.atom("a")
    assert parse_formula("a | b -> false", AB) == parse_formula("~a & ~b", AB)


def test_constants_and_whitespace():
    assert parse_formula(" true ", AB) == AB.top()
    assert parse_formula("false|false", AB).is_empty


@pytest.mark.parametrize("text, position", [
    ("a &", 3),
    ("(a | b", 6),
    ("a b", 2),
    ("a $ b", 2),
    ("", 0),
    (")", 0),
])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text, AB)
    assert info.value.position == position


def test_unknown_atom():
    with pytest.raises(UnknownAtom):
        parse_formula("a & c", AB)


def test_bindings():
    x = parse_formula("a & b", AB)
    assert parse_formula("~x", AB, {"x": x}) == ~x


def test_entails_examples():
    a, b = AB.atom("a"), AB.atom("b")
    assert entails(a & b, b)
    assert not entails(b, a & b)
    assert entails(AB.bottom(), a)


def test_space_mismatch():
    other = build_space(["a", "c"])
    with pytest.raises(SpaceMismatch):
        AB.atom("a") & other.atom("a")
    with pytest.raises(SpaceMismatch):
        entails(AB.atom("a"), other.atom("a"))


def test_proposition_range_checked():
    with pytest.raises(ValueError):
        Proposition(AB, 1 << 4)


# -- properties

ATOMS = ["p", "q", "r"]
SPACE3 = build_space(ATOMS)


def formulas():
    leaf = st.sampled_from(ATOMS + ["true", "false"])
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(lambda f: f"~{f}"),
            st.tuples(sub, st.sampled_from(["&", "|", "->"]), sub).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
            st.tuples(sub, st.sampled_from(["&", "|", "->"]), sub).map(lambda t: f"{t[0]} {t[1]} {t[2]}"),
        ),
        max_leaves=8,
    )


@given(formulas())
def test_parse_matches_truth_table(text):
    assert parse_formula(text, SPACE3).worlds == truth_table(text, ATOMS)


masks = st.integers(0, 255).map(lambda m: Proposition(SPACE3, m))


@given(masks, masks)
def test_de_morgan(p, q):
    assert ~(p & q) == ~p | ~q
    assert ~(p | q) == ~p & ~q
    assert ~~p == p


@given(masks, masks)
def test_mutual_entailment_is_equality(p, q):
    assert (entails(p, q) and entails(q, p)) == (p.worlds == q.worlds)
