"""Shared strategies and an independent numeric evaluator for the engine's fields."""

from __future__ import annotations

from fractions import Fraction

import mpmath
from hypothesis import strategies as st

from nhtwist.coefficients import FLAT, HYPERBOLIC, TRIGONOMETRIC, GaussianRational, ScalarField
from nhtwist.generators import DiffOperator, standard_rep
from nhtwist.spacetime import SpaceExpr

mpmath.mp.dps = 40

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
gaussian = st.builds(GaussianRational, small, small)
real_gaussian = st.builds(GaussianRational, small)
param_names = st.sampled_from(["alpha1", "alpha2", "kappa3"])


@st.composite
def monomials(draw):
    names = draw(st.lists(param_names, max_size=2, unique=True))
    return tuple(sorted((n, draw(st.integers(1, 2))) for n in names))


@st.composite
def fields(draw, mode=HYPERBOLIC, max_terms=4, real=False):
    flat = mode == FLAT
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        m = draw(st.integers(0, 2))
        k = 0 if flat else draw(st.integers(-2, 2))
        p = 0 if flat else draw(st.integers(-2, 2))
        terms[(m, k, p, draw(monomials()))] = draw(real_gaussian if real else gaussian)
    return ScalarField(terms, mode)


@st.composite
def exprs(draw, mode=HYPERBOLIC, max_degree=2, max_terms=3):
    out = SpaceExpr.zero(mode)
    for _ in range(draw(st.integers(0, max_terms))):
        idx = tuple(draw(st.integers(0, max_degree)) for _ in range(3))
        out = out + SpaceExpr.monomial(idx, draw(fields(mode, max_terms=2)))
    return out


@st.composite
def polynomials(draw, mode=HYPERBOLIC, max_degree=2):
    """Polynomials in x with coefficients t^m and small rationals."""
    out = SpaceExpr.zero(mode)
    for _ in range(draw(st.integers(1, 3))):
        idx = [0, 0, 0]
        for _ in range(draw(st.integers(0, max_degree))):
            idx[draw(st.integers(0, 2))] += 1
        coeff = ScalarField.time(draw(st.integers(0, 1)), mode) * draw(st.fractions(-2, 2, max_denominator=3))
        out = out + SpaceExpr.monomial(tuple(idx), coeff)
    return out


GENERATOR_NAMES = ["H", "P1", "P2", "P3", "K1", "K2", "K3", "F1", "F2", "F3", "M12", "M13", "M23"]


@st.composite
def operators(draw, kind):
    """Random combinations of generator operators and their products."""
    op = DiffOperator({}, kind.mode)
    names = [n for n in GENERATOR_NAMES if n in kind.generators]
    for _ in range(draw(st.integers(1, 3))):
        term = standard_rep(draw(st.sampled_from(names)), kind)
        if draw(st.booleans()):
            term = term * standard_rep(draw(st.sampled_from(names)), kind)
        op = op + term.scale(ScalarField.constant(draw(gaussian), kind.mode))
    return op


# -- numerics ------------------------------------------------------------------------


def mp(x):
    if isinstance(x, mpmath.mpf):
        return x
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def _num(c: GaussianRational):
    return mpmath.mpc(mp(c.re), mp(c.im))


def evaluate(f: ScalarField, t, tau, params=None):
    """Numeric value of a field read straight off its term map."""
    params = params or {}
    t, tau = mp(t), mp(tau)
    total = mpmath.mpc(0)
    for (m, k, p, mono), c in f.items():
        phase = k * t / tau if k else 0
        beta = mpmath.exp(1j * phase) if f.mode == TRIGONOMETRIC else mpmath.exp(phase)
        value = _num(c) * t ** m * beta
        if p:
            value *= tau ** p
        for name, e in mono:
            value *= mp(params[name]) ** e
        total += value
    return total


SAMPLE_POINTS = [(Fraction(3, 10), Fraction(7, 5)), (Fraction(-6, 5), Fraction(2)), (Fraction(5, 2), Fraction(9, 4))]
