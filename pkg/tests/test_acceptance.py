"""The seven acceptance criteria, each at exact equality.

Every test records one PASS/FAIL line, printed in the terminal summary.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from nhtwist.coefficients import FLAT, HYPERBOLIC, MODES, TRIGONOMETRIC, GaussianRational, I, ScalarField
from nhtwist.contraction import contract_both_signs, contract_table
from nhtwist.generators import (
    GALILEI,
    NH_MINUS,
    NH_PLUS,
    bracket,
    commutator,
    realize,
    standard_rep,
    verify_algebra,
)
from nhtwist.presets import contracted_deformation, contracted_rate, deformation, rate
from nhtwist.printing import print_text
from nhtwist.spacetime import SpaceExpr
from nhtwist.symmetry import check_h_is_dfdt, classify_unbroken
from nhtwist.syntax import parse_expr
from nhtwist.twist import (
    check_cocycle,
    classify_nc_type,
    commutator_table,
    kappa_factor,
    noncommutativity,
    preset,
    star_commutator,
    star_product,
    to_kappa,
)

PRESETS = range(1, 7)
NH = (NH_PLUS, NH_MINUS)
SURVIVORS = ["P1", "P2", "P3", "K1", "K2", "K3", "F1", "F2", "F3", "M12"]


class Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title, self.failures = number, title, []

    def check(self, ok: bool, what: str):
        if not ok:
            self.failures.append(what)

    def finish(self):
        verdict = "PASS" if not self.failures else f"FAIL ({len(self.failures)}: {self.failures[:3]})"
        line = f"criterion {self.number} [{self.title}]: {verdict}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert not self.failures, line


def _mode_factor(kind, value):
    return ScalarField({(0, 0, -2, ()): I * value}, kind.mode)


def test_criterion_1_algebra_tables():
    c = Criterion(1, "bracket tables in the differential realization")
    for kind in (NH_PLUS, NH_MINUS, GALILEI):
        report = verify_algebra(kind)
        c.check(report.all_match, f"{kind.label}: {[(m.left, m.right) for m in report.mismatches()]}")
        c.check(len(report.checks) == 78, f"{kind.label}: {len(report.checks)} pairs")
        rep = lambda n: standard_rep(n, kind)  # noqa: E731
        for i in (1, 2, 3):
            c.check(commutator(rep(f"K{i}"), rep("H")) == rep(f"P{i}").scale(-I), f"[K{i},H] {kind.label}")
            c.check(commutator(rep("H"), rep(f"F{i}")) == rep(f"K{i}").scale(I * 2), f"[H,F{i}] {kind.label}")
            hp = commutator(rep("H"), rep(f"P{i}"))
            if kind.sign:
                c.check(hp == rep(f"K{i}").scale(_mode_factor(kind, kind.sign)), f"[H,P{i}] {kind.label}")
            else:
                c.check(hp.is_zero() and bracket("H", f"P{i}", kind) == {}, f"[H,P{i}] galilei")
            c.check(hp == realize(bracket("H", f"P{i}", kind), kind), f"table [H,P{i}] {kind.label}")
    c.finish()


def test_criterion_2_deformed_spaces():
    c = Criterion(2, "[x1,x2] = i f(t), all other pairs commute")
    for a in PRESETS:
        factors = {kappa_factor(a, kind) for kind in NH}
        c.check(len(factors) == 1 and 0 not in factors, f"kappa factor {a}: {factors}")
        for kind in NH:
            for (i, j), value in commutator_table(preset(a, kind)).items():
                if (i, j) == (1, 2):
                    expected = SpaceExpr.scalar(deformation(a, kind.mode) * I)
                    c.check(to_kappa(value, a, kind) == expected, f"f{a} {kind.label}: {print_text(value)}")
                else:
                    c.check(value.is_zero(), f"[x{i},x{j}] {kind.label} preset {a}")
    c.finish()


def test_criterion_3_covariance():
    c = Criterion(3, "generator residuals")
    for a in PRESETS:
        for kind in (NH_PLUS, NH_MINUS, GALILEI):
            F = preset(a, kind)
            report = classify_unbroken(F)
            for h in SURVIVORS:
                c.check(report.invariant(h), f"{h} preset {a} {kind.label}")
            expected_h = rate(a, kind.mode) if kind.sign else contracted_rate(a)
            c.check(to_kappa(report.h_of_t, a, kind) == expected_h, f"h preset {a} {kind.label}")
            h_slots = {s for s, v in report.residuals["H"].items() if v}
            c.check(h_slots <= {(1, 2), (2, 1)}, f"H slots {a} {kind.label}")
            f = SpaceExpr.scalar(report.f)
            m13, m23 = report.residuals["M13"], report.residuals["M23"]
            c.check(m13[(2, 3)] == f and m13[(3, 2)] == -f, f"M13 preset {a} {kind.label}")
            c.check(m23[(1, 3)] == -f and m23[(3, 1)] == f, f"M23 preset {a} {kind.label}")
            c.check(sum(1 for v in m13.values() if v) == 2, f"M13 extra slots {a} {kind.label}")
            c.check(sum(1 for v in m23.values() if v) == 2, f"M23 extra slots {a} {kind.label}")
            for gen, slots in report.residuals.items():
                c.check(all(not slots[(0, j)] for j in (1, 2, 3)), f"{gen} t-row {a} {kind.label}")
            if kind.sign:
                c.check(check_h_is_dfdt(F).holds, f"h = df/dt preset {a} {kind.label}")
    c.finish()


def test_criterion_4_unbroken_subalgebra():
    c = Criterion(4, "unbroken generators form a closed subalgebra")
    for a in PRESETS:
        for kind in (NH_PLUS, NH_MINUS, GALILEI):
            report = classify_unbroken(preset(a, kind))
            expected = (["H"] if kind == GALILEI and a == 1 else []) + SURVIVORS
            c.check(report.unbroken == expected, f"preset {a} {kind.label}: {report.unbroken}")
            c.check(report.is_closed(), f"closure preset {a} {kind.label}")
    c.finish()


def test_criterion_5_contraction():
    c = Criterion(5, "tau -> infinity contraction")
    for a in PRESETS:
        for kind in NH:
            w, g = contract_table(a, kind)  # raises unless path independence holds
            c.check(w == contracted_deformation(a), f"w{a} {kind.label}: {print_text(w)}")
            c.check(g == contracted_rate(a), f"g{a} {kind.label}: {print_text(g)}")
        both = contract_both_signs(a)
        c.check(both.w == contracted_deformation(a), f"both signs {a}")
        G = preset(a, GALILEI)
        c.check(
            to_kappa(noncommutativity(G), a, GALILEI) == contracted_deformation(a),
            f"deform-then-contract {a}",
        )
    c.finish()


# -- criterion 6: seeded random structural checks ----------------------------------------


def _rand_poly(rng, mode, max_degree=2):
    e = SpaceExpr.zero(mode)
    for _ in range(rng.randint(1, 3)):
        idx = [0, 0, 0]
        for _ in range(rng.randint(0, max_degree)):
            idx[rng.randrange(3)] += 1
        coeff = ScalarField.time(rng.randint(0, 1), mode) * Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        e = e + SpaceExpr.monomial(tuple(idx), coeff)
    return e


def _rand_field(rng, mode):
    terms = {}
    params = ("alpha2", "kappa5")
    for _ in range(rng.randint(0, 4)):
        k = 0 if mode == FLAT else rng.randint(-2, 2)
        p = 0 if mode == FLAT else rng.randint(-2, 2)
        mono = tuple((n, rng.randint(1, 2)) for n in params if rng.random() < 0.4)
        c = GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-2, 2), rng.randint(1, 3)))
        terms[(rng.randint(0, 2), k, p, mono)] = c
    return ScalarField(terms, mode)


def _rand_expr(rng, mode):
    e = SpaceExpr.zero(mode)
    for _ in range(rng.randint(0, 3)):
        idx = tuple(rng.randint(0, 2) for _ in range(3))
        e = e + SpaceExpr.monomial(idx, _rand_field(rng, mode))
    return e


def _rand_operator(rng, kind):
    op = standard_rep(rng.choice(kind.generators), kind).scale(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
    for _ in range(rng.randint(0, 2)):
        term = standard_rep(rng.choice(kind.generators), kind)
        if rng.random() < 0.5:
            term = term * standard_rep(rng.choice(kind.generators), kind)
        op = op + term.scale(GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2)))
    return op


def test_criterion_6_structural_properties():
    c = Criterion(6, "associativity, cocycle, normalization, round trip, Jacobi")
    rng = random.Random(20261014)
    kinds = (NH_PLUS, NH_MINUS, GALILEI)
    for a in PRESETS:
        for n in range(100):
            kind = kinds[n % 3]
            F = preset(a, kind)
            f, g, h = (_rand_poly(rng, kind.mode) for _ in range(3))
            lhs = star_product(F, star_product(F, f, g), h)
            rhs = star_product(F, f, star_product(F, g, h))
            c.check(lhs == rhs, f"associativity preset {a} {kind.label} #{n}")
            one = SpaceExpr.constant(1, kind.mode)
            c.check(star_product(F, f, one) == f == star_product(F, one, f), f"normalization {a} #{n}")
        for kind in kinds:
            report = check_cocycle(preset(a, kind), degree=3)
            c.check(report.holds, f"cocycle preset {a} {kind.label}")
    for n in range(500):
        mode = MODES[n % 3]
        e = _rand_expr(rng, mode)
        c.check(parse_expr(print_text(e), mode) == e, f"round trip #{n}: {print_text(e)}")
    for n in range(100):
        kind = kinds[n % 3]
        x, y, z = (_rand_operator(rng, kind) for _ in range(3))
        jac = commutator(commutator(x, y), z) + commutator(commutator(y, z), x) + commutator(commutator(z, x), y)
        c.check(jac.is_zero(), f"Jacobi #{n} {kind.label}")
    c.finish()


def test_criterion_7_type_classification():
    c = Criterion(7, "contracted commutator types")
    expected = {1: "canonical", 2: "Lie-algebraic", 3: "quadratic", 4: "higher-order", 5: "quadratic", 6: "higher-order"}
    for a in PRESETS:
        direct = classify_nc_type(noncommutativity(preset(a, GALILEI)))
        c.check(direct == expected[a], f"preset {a}: {direct}")
        for kind in NH:
            w, _ = contract_table(a, kind)
            c.check(classify_nc_type(w) == expected[a], f"preset {a} {kind.label} limit")
    c.finish()


@pytest.mark.parametrize("mode", [HYPERBOLIC, TRIGONOMETRIC])
def test_acceptance_inputs_are_consistent(mode):
    # the tables used above are themselves f and df/dt of one another
    for a in PRESETS:
        assert deformation(a, mode).d_dt() == rate(a, mode)
        assert contracted_deformation(a).d_dt() == contracted_rate(a)
    x1, x2 = SpaceExpr.coordinate(1, mode), SpaceExpr.coordinate(2, mode)
    assert star_commutator(preset(1, NH_PLUS if mode == HYPERBOLIC else NH_MINUS), x1, x2)
