import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupsemi.coefficients import NatPoly
from groupsemi.errors import ConditionViolated, NotApplicable, SearchLimitExceeded
from groupsemi.goldbach import (
    decompose_binomial,
    decompose_trinomial,
    goldbach_decompose,
    verify_summand_bound,
)
from groupsemi.parsing import parse_expr
from groupsemi.polyexpr import PolyExpr, is_irreducible
from groupsemi.sweep import (
    SweepReport,
    check_instance,
    is_exception_form,
    natural_instances,
    oracle_irreducible,
    random_lex_instances,
    run_sweep,
)

from .strategies import NAT, NATPOLY, Z, Z2, polys


def P(text, dom=NAT, grp=Z):
    return parse_expr(text, dom, grp)


def summands(f):
    return [str(s) for s in goldbach_decompose(f).summands]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x+1", ["x + 1"]),
        ("2x+2", ["x + 1", "x + 1"]),
        ("3x^2+2", ["x^2 + 1", "2x^2 + 1"]),
        ("x^2+x+1", ["x^2 + x + 1"]),
        ("2x^2+x+1", ["x^2 + x", "x^2 + 1"]),
        ("2x^2+3x+2", ["x^2 + x + 2", "x^2 + 2x"]),
        ("x^3+x^2+x+1", ["x^2 + 1", "x^3 + x"]),
        ("x^4+x^3+x^2+x+1", ["x^3 + x^2 + 1", "x^4 + x"]),
    ],
)
def test_examples(text, expected):
    assert summands(P(text)) == expected


def test_all_twos_quartic():
    f = P("2x^4+2x^3+2x^2+2x+2")
    dec = goldbach_decompose(f)
    assert len(dec) == 2 and dec.total() == f
    assert all(oracle_irreducible(s) for s in dec.summands)


def test_binomial_and_trinomial_need_their_sizes():
    with pytest.raises(NotApplicable):
        decompose_binomial(P("x^2+x+1"))
    with pytest.raises(NotApplicable):
        decompose_trinomial(P("x+1"))


@pytest.mark.parametrize("text", ["0", "3x^2"])
def test_too_few_terms(text):
    with pytest.raises(NotApplicable):
        goldbach_decompose(P(text))


def test_laurent_input_is_shifted_back():
    f = P("x^2 + 2x^(-1) + x^(-3) + 3")
    dec = goldbach_decompose(f)
    assert dec.total() == f
    assert all(oracle_irreducible(s) for s in dec.summands)
    assert any("shifted" in line for line in dec.trace)


def test_certificates_attached():
    dec = goldbach_decompose(P("x^3+x^2+x+1"))
    assert [c.irreducible for c in dec.certificates] == [True, True]


def test_deterministic():
    f = P("3x^5+x^3+4x^2+2")
    a, b = goldbach_decompose(f), goldbach_decompose(f)
    assert [str(s) for s in a.summands] == [str(s) for s in b.summands]
    assert a.trace == b.trace


def test_small_sweep_is_clean():
    report = run_sweep(natural_instances(max_exp=3, max_coeff=3))
    assert report.ok, report.rows()
    assert report.decomposed == report.instances


def test_lex_sample_is_clean():
    report = run_sweep(random_lex_instances(count=100, seed=7), cross_checks=False)
    assert report.ok, report.failures


@given(polys(coeffs=st.integers(1, 5), max_terms=6, radius=3))
@settings(max_examples=150, deadline=None)
def test_random_inputs(f):
    if len(f) < 2:
        return
    report = SweepReport()
    check_instance(f, report, cross_checks=False)
    assert report.ok, report.failures + report.exception_mismatches


@given(polys(group=Z2, coeffs=st.integers(1, 3), max_terms=5, radius=2))
@settings(max_examples=80, deadline=None)
def test_random_lex_inputs(f):
    if len(f) < 2:
        return
    dec = goldbach_decompose(f, certify=False)
    assert dec.total() == f and 1 <= len(dec) <= 2
    assert (len(dec) == 1) == is_exception_form(f)


# the condition on additive atoms cannot be dropped ------------------------------

WITNESS = "t + t*x + t*x^2"


def test_summand_bound_witness():
    f = P(WITNESS, NATPOLY)
    assert verify_summand_bound(f, 2) is False
    assert verify_summand_bound(f, 3) is True
    with pytest.raises(ConditionViolated):
        goldbach_decompose(f)


def test_summand_bound_over_naturals():
    assert verify_summand_bound(P("2x+2"), 2) is True
    assert verify_summand_bound(P("2x+2"), 1) is False
    assert verify_summand_bound(P("x+1"), 1) is True


def test_summand_bound_guard():
    with pytest.raises(SearchLimitExceeded):
        verify_summand_bound(P("40x^3+40x^2+40x+40"), 3, limit=1000)


natpoly_no_constant = st.lists(st.integers(0, 2), min_size=1, max_size=3).map(
    lambda cs: NatPoly.from_coeffs([0] + cs) or (0, 1)
)


@given(
    st.lists(st.tuples(st.integers(-3, 3), natpoly_no_constant), min_size=2, max_size=5),
)
@settings(max_examples=100, deadline=None)
def test_natpoly_without_constant_terms_refused(terms):
    f = PolyExpr.from_terms(terms, NATPOLY, Z)
    if len(f) < 2:
        return
    with pytest.raises(ConditionViolated):
        goldbach_decompose(f)


def test_natpoly_with_constant_terms_decomposes():
    f = P("(t+2)*x^2 + (t+1)*x + (2t+1)", NATPOLY)
    dec = goldbach_decompose(f)
    assert dec.total() == f
    assert all(is_irreducible(s)[0] for s in dec.summands)
