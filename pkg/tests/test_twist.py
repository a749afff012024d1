from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import polynomials
from nhtwist.coefficients import FLAT, HYPERBOLIC, I, ScalarField
from nhtwist.generators import GALILEI, NH_MINUS, NH_PLUS
from nhtwist.presets import contracted_deformation, deformation
from nhtwist.spacetime import SpaceExpr
from nhtwist.syntax import ParseError, parse_expr
from nhtwist.twist import (
    SeriesDefect,
    TwistBivector,
    TwistError,
    check_cocycle,
    classify_nc_type,
    commutator_table,
    coordinate,
    identity_twist,
    kappa_factor,
    noncommutativity,
    preset,
    star_commutator,
    star_product,
    star_product_generic,
    to_kappa,
    twist_from_text,
)

KINDS = [NH_PLUS, NH_MINUS, GALILEI]
PRESETS = range(1, 7)
# kappa_a = r * alpha_a, fixed by expanding the twist
KAPPA_FACTORS = {1: 1, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2}

by_label = lambda k: k.label  # noqa: E731


def _expected_f(a, kind):
    return contracted_deformation(a) if kind.mode == FLAT else deformation(a, kind.mode)


@pytest.mark.parametrize("kind", KINDS, ids=by_label)
@pytest.mark.parametrize("a", PRESETS)
def test_kappa_factor_golden(a, kind):
    assert kappa_factor(a, kind) == KAPPA_FACTORS[a]


@pytest.mark.parametrize("kind", KINDS, ids=by_label)
@pytest.mark.parametrize("a", PRESETS)
def test_commutator_table(a, kind):
    table = commutator_table(preset(a, kind))
    assert set(table) == {(i, j) for i in range(4) for j in range(i + 1, 4)}
    for (i, j), value in table.items():
        if (i, j) == (1, 2):
            assert to_kappa(value, a, kind) == SpaceExpr.scalar(_expected_f(a, kind) * I)
        else:
            assert value.is_zero(), (i, j)


def test_star_examples():
    F = preset(2, NH_PLUS)
    x1, x2 = coordinate(1, NH_PLUS), coordinate(2, NH_PLUS)
    expected = parse_expr("i*alpha2*tau*cosh(t/tau)*sinh(t/tau)")
    assert star_commutator(F, x1, x2) == expected
    assert star_product(identity_twist(), parse_expr("x1"), parse_expr("x2")) == parse_expr("x1*x2")
    F3 = twist_from_text("alpha3: K1^K2", NH_MINUS)
    assert star_commutator(F3, coordinate(1, NH_MINUS), coordinate(3, NH_MINUS)).is_zero()


@pytest.mark.parametrize("a", PRESETS)
def test_hermitian_structure(a):
    f = noncommutativity(preset(a, NH_PLUS))
    assert all(not c.im for _, c in f.items())


@pytest.mark.parametrize("kind", KINDS, ids=by_label)
@pytest.mark.parametrize("a", PRESETS)
def test_cocycle(a, kind):
    report = check_cocycle(preset(a, kind), degree=3)
    assert report.holds, report.failures
    assert report.checked > 0


def test_twist_validation():
    alpha = ScalarField.param("alpha1")
    with pytest.raises(TwistError):
        TwistBivector(((alpha, "H", "P1"),), NH_PLUS)
    with pytest.raises(TwistError):
        TwistBivector(((alpha, "M12", "P1"),), NH_PLUS)
    with pytest.raises(TwistError):
        TwistBivector(((alpha, "F1", "P2"),), NH_PLUS.without_acceleration())
    with pytest.raises(TwistError):
        TwistBivector(((ScalarField.time(1), "P1", "P2"),), NH_PLUS)
    with pytest.raises(TwistError):
        preset(7)


def test_twist_from_text():
    assert twist_from_text("none").is_zero()
    assert twist_from_text("alpha4", NH_MINUS).preset == 4
    F = twist_from_text("alpha1: P1^P2 - alpha1: P2^P1")
    assert noncommutativity(F) == noncommutativity(preset(1))
    with pytest.raises(ParseError):
        twist_from_text("alpha1: H^P1")
    with pytest.raises(TwistError):
        twist_from_text("alpha1: F1^P2", NH_PLUS.without_acceleration())


def test_series_guard():
    F = preset(1)
    f = parse_expr("x1^3")
    g = parse_expr("x2^3")
    with pytest.raises(SeriesDefect):
        star_product(F, f, g, max_order=2)
    # three applications exhaust the degree; a guard of three is enough
    assert star_product(F, f, g, max_order=3) == star_product(F, f, g)


def test_classify_nc_type():
    t = ScalarField.time
    assert classify_nc_type(ScalarField.zero()) == "commutative"
    assert classify_nc_type(ScalarField.param("kappa1")) == "canonical"
    assert classify_nc_type(t(1)) == "Lie-algebraic"
    assert classify_nc_type(t(2) * 3) == "quadratic"
    assert classify_nc_type(t(4)) == "higher-order"
    with pytest.raises(ValueError):
        classify_nc_type(deformation(1, HYPERBOLIC))


# -- properties ----------------------------------------------------------------------

cases = st.sampled_from(KINDS)


def _triples(kind):
    return st.tuples(polynomials(kind.mode), polynomials(kind.mode), polynomials(kind.mode), st.just(kind))


@pytest.mark.parametrize("a", PRESETS)
@settings(max_examples=100, deadline=None)
@given(case=cases.flatmap(_triples))
def test_star_associativity(a, case):
    f, g, h, kind = case
    F = preset(a, kind)
    assert star_product(F, star_product(F, f, g), h) == star_product(F, f, star_product(F, g, h))


@pytest.mark.parametrize("a", PRESETS)
@settings(max_examples=30, deadline=None)
@given(case=cases.flatmap(_triples))
def test_fast_and_generic_routes_agree(a, case):
    f, g, _, kind = case
    F = preset(a, kind)
    assert star_product(F, f, g) == star_product_generic(F, f, g)


@pytest.mark.parametrize("a", PRESETS)
@settings(max_examples=30, deadline=None)
@given(case=cases.flatmap(_triples))
def test_normalization_and_antisymmetry(a, case):
    f, g, _, kind = case
    F = preset(a, kind)
    one = SpaceExpr.constant(1, kind.mode)
    assert star_product(F, f, one) == f == star_product(F, one, f)
    assert star_commutator(F, f, g) == -star_commutator(F, g, f)


@pytest.mark.parametrize("a", PRESETS)
@settings(max_examples=30, deadline=None)
@given(case=cases.flatmap(_triples))
def test_undeformed_limit(a, case):
    f, g, _, kind = case
    F = preset(a, kind).substitute({f"alpha{a}": Fraction(0)})
    assert star_product(F, f, g) == f * g
    assert star_product_generic(F, f, g) == f * g


@pytest.mark.parametrize("a", PRESETS)
@settings(max_examples=30, deadline=None)
@given(case=cases.flatmap(_triples))
def test_series_terminates_at_degree(a, case):
    f, g, _, kind = case
    F = preset(a, kind)
    bound = min(max(f.degree(), 0), max(g.degree(), 0))
    assert star_product(F, f, g, max_order=bound) == star_product(F, f, g, max_order=bound + 1)


@settings(max_examples=30, deadline=None)
@given(cases.flatmap(lambda k: st.tuples(polynomials(k.mode), st.just(k))), st.sampled_from(PRESETS))
def test_time_functions_short_circuit(case, a):
    f, kind = case
    F = preset(a, kind)
    s = SpaceExpr.scalar(ScalarField.time(2, kind.mode) + 1)
    assert star_product(F, s, f) == s * f == star_product_generic(F, s, f)
