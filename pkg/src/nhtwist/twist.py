"""Abelian twists, star products and the deformed commutation relations.

A twist is ``F = exp(B)`` with the bivector

    B = (i/4) * sum_j c_j * (A_j (x) B_j - B_j (x) A_j)

built from mutually commuting generators.  The star product is
``f * g = mu(F^-1 |> f (x) g)``.  Every carrier generator is a first-order
x-derivative with a t-dependent coefficient, so on polynomials the exponential
series is finite and all results are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .coefficients import FLAT, GaussianRational, I, ScalarField, proportionality
from .generators import (
    NH_PLUS,
    AlgebraKind,
    DiffOperator,
    GeneratorError,
    apply,
    commutator,
    normalize_generator,
    standard_rep,
)
from .presets import CARRIERS, PRESETS, deformation
from .spacetime import SpaceExpr


class TwistError(ValueError):
    pass


class SeriesDefect(RuntimeError):
    """The exponential series failed to terminate within the order guard."""


COORDINATES = ("t", "x1", "x2", "x3")


@dataclass(frozen=True)
class TwistBivector:
    terms: tuple = ()  # ((coefficient ScalarField, left name, right name), ...)
    kind: AlgebraKind = NH_PLUS
    preset: int | None = None
    _legs: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        names = set()
        clean = []
        for coeff, left, right in self.terms:
            coeff = coeff if isinstance(coeff, ScalarField) else ScalarField.constant(GaussianRational.coerce(coeff))
            if not coeff.is_time_independent() or coeff.max_tau_power() not in (None, 0):
                raise TwistError("twist coefficients must be constants")
            for name in (left, right):
                canonical, _ = normalize_generator(name)
                if canonical[0] not in "PKF":
                    raise TwistError(f"{name} is not an admissible twist carrier")
                if canonical not in self.kind.generators:
                    raise TwistError(f"{name} is not a generator of {self.kind.label}")
                names.add(name)
            clean.append((coeff, left, right))
        reps = {n: standard_rep(n, self.kind) for n in sorted(names)}
        ordered = sorted(reps)
        for n, a in enumerate(ordered):
            for b in ordered[n + 1:]:
                if commutator(reps[a], reps[b]):
                    raise TwistError(f"carrier generators {a} and {b} do not commute")
        quarter_i = I * Fraction(1, 4)
        legs = []
        for coeff, left, right in clean:
            c = coeff * quarter_i
            legs.append((c, reps[left], reps[right]))
            legs.append((-c, reps[right], reps[left]))
        object.__setattr__(self, "terms", tuple(clean))
        object.__setattr__(self, "_legs", tuple(legs))

    @property
    def legs(self):
        """``B`` as ``((c, L, R), ...)`` meaning ``sum c * L (x) R``."""
        return self._legs

    def is_zero(self) -> bool:
        return all(not c for c, _, _ in self._legs)

    def substitute(self, values) -> "TwistBivector":
        return TwistBivector(tuple((c.substitute(values), a, b) for c, a, b in self.terms), self.kind, self.preset)

    def scaled(self, factor) -> "TwistBivector":
        return TwistBivector(tuple((c * factor, a, b) for c, a, b in self.terms), self.kind, self.preset)

    @property
    def name(self) -> str:
        if self.preset is not None:
            return f"alpha{self.preset}"
        if not self.terms:
            return "none"
        from .printing import print_text

        return " + ".join(f"({print_text(c)})*{a}^{b}" for c, a, b in self.terms)


def identity_twist(kind: AlgebraKind = NH_PLUS) -> TwistBivector:
    return TwistBivector((), kind)


def preset(a: int, kind: AlgebraKind = NH_PLUS) -> TwistBivector:
    """Preset ``a``: sum over k, l in {1, 2} of alpha^{kl} G_k ^ G'_l, alpha^{12} = -alpha^{21}."""
    if a not in PRESETS:
        raise TwistError(f"no preset {a}")
    left, right = CARRIERS[a]
    alpha = ScalarField.param(f"alpha{a}")
    terms = ((alpha, f"{left}1", f"{right}2"), (-alpha, f"{left}2", f"{right}1"))
    return TwistBivector(terms, kind, preset=a)


# -- exponential series ---------------------------------------------------------


def _default_guard(*exprs: SpaceExpr) -> int:
    return 1 + sum(max(e.degree(), 0) for e in exprs)


def star_product(F: TwistBivector, f: SpaceExpr, g: SpaceExpr, max_order: int | None = None) -> SpaceExpr:
    """``mu(exp(-B) |> f (x) g)``, summed exactly."""
    if f.is_scalar() or g.is_scalar() or F.is_zero():
        # Carrier generators annihilate functions of t alone.
        return f * g
    return _star_multinomial(F, f, g, max_order)


def _star_multinomial(F, f, g, max_order=None):
    guard = _default_guard(f, g) if max_order is None else max_order
    legs = F.legs
    one = ScalarField.constant(1)
    total = f * g
    level = [((0,) * len(legs), -1, f, g, one)]
    order = 0
    while level:
        order += 1
        nxt = []
        for nu, last, left, right, coeff in level:
            for j in range(max(last, 0), len(legs)):
                c, L, R = legs[j]
                new_left = apply(L, left)
                if not new_left:
                    continue
                new_right = apply(R, right)
                if not new_right:
                    continue
                count = nu[j] + 1
                new_nu = nu[:j] + (count,) + nu[j + 1:]
                new_coeff = coeff * (-c) * GaussianRational(Fraction(1, count))
                nxt.append((new_nu, j, new_left, new_right, new_coeff))
        if nxt and order > guard:
            raise SeriesDefect(f"star product series exceeded order {guard}")
        for _, _, left, right, coeff in nxt:
            total = total + left * right * coeff
        level = nxt
    return total


def exp_action(terms, tensor: dict, sign: int = 1, max_order: int = 32) -> dict:
    """Apply ``exp(sign * X)`` to a tensor.

    ``terms`` lists ``(c, ops)`` with ``ops`` a tuple of operators (``None`` for
    the identity leg), meaning ``X = sum c * op_1 (x) ... (x) op_n``.  The tensor
    maps leg tuples of :class:`SpaceExpr` to scalar coefficients.  No
    commutativity is assumed.
    """
    total = dict(tensor)
    current = dict(tensor)
    n = 0
    while current:
        n += 1
        if n > max_order:
            raise SeriesDefect(f"exponential series exceeded order {max_order}")
        nxt: dict = {}
        for legs, coeff in current.items():
            for c, ops in terms:
                new_legs = []
                for e, op in zip(legs, ops):
                    e = e if op is None else apply(op, e)
                    if not e:
                        break
                    new_legs.append(e)
                else:
                    key = tuple(new_legs)
                    value = coeff * c * sign * GaussianRational(Fraction(1, n))
                    value = nxt[key] + value if key in nxt else value
                    if value:
                        nxt[key] = value
                    else:
                        nxt.pop(key, None)
        current = nxt
        for key, value in current.items():
            total[key] = total[key] + value if key in total else value
    return {k: v for k, v in total.items() if v}


def contract_tensor(tensor: dict) -> SpaceExpr:
    """Multiplication map: sum of coefficient times product of legs."""
    result = SpaceExpr.zero()
    for legs, coeff in tensor.items():
        term = SpaceExpr.scalar(coeff)
        for e in legs:
            term = term * e
        result = result + term
    return result


def star_product_generic(F: TwistBivector, f: SpaceExpr, g: SpaceExpr, max_order: int | None = None) -> SpaceExpr:
    """Star product through the commutativity-free tensor series."""
    guard = _default_guard(f, g) if max_order is None else max_order
    terms = [(c, (L, R)) for c, L, R in F.legs]
    tensor = exp_action(terms, {(f, g): ScalarField.constant(1)}, sign=-1, max_order=guard)
    return contract_tensor(tensor)


def star_commutator(F: TwistBivector, f: SpaceExpr, g: SpaceExpr, max_order: int | None = None) -> SpaceExpr:
    return star_product(F, f, g, max_order) - star_product(F, g, f, max_order)


def coordinate(axis: int, kind: AlgebraKind) -> SpaceExpr:
    return SpaceExpr.coordinate(axis, kind.mode)


def commutator_table(F: TwistBivector) -> dict[tuple[int, int], SpaceExpr]:
    """Star commutators of all coordinate pairs ``(i, j)``, ``0 <= i < j <= 3``.

    Axis 0 is the time coordinate, which enters only through coefficients, so
    its row vanishes identically.
    """
    xs = [coordinate(a, F.kind) for a in range(4)]
    return {(i, j): star_commutator(F, xs[i], xs[j]) for i in range(4) for j in range(i + 1, 4)}


def noncommutativity(F: TwistBivector) -> ScalarField:
    """``f(t)`` with ``[x1, x2] = i f(t)``."""
    value = star_commutator(F, coordinate(1, F.kind), coordinate(2, F.kind))
    if not value.is_scalar():
        raise TwistError("[x1, x2] is not a function of time alone")
    return (value.scalar_part() * -I).with_mode(F.kind.mode) if value else ScalarField.zero(F.kind.mode)


def kappa_factor(a: int, kind: AlgebraKind) -> Fraction:
    """Rational ``r`` with ``kappa_a = r * alpha_a`` for preset ``a``."""
    f = noncommutativity(preset(a, kind))
    if kind.mode == FLAT:
        from .presets import contracted_deformation

        shape = contracted_deformation(a)
    else:
        shape = deformation(a, kind.mode)
    shape = shape.rename_param(f"kappa{a}", f"alpha{a}")
    r = proportionality(f, shape)
    if r is None or not r or r.im:
        raise TwistError(f"preset {a} does not reproduce the closed-form deformation")
    return r.re


def to_kappa(value, a: int, kind: AlgebraKind):
    """Rewrite ``alpha_a`` in terms of ``kappa_a``."""
    r = kappa_factor(a, kind)
    return value.substitute({f"alpha{a}": ScalarField.param(f"kappa{a}") * GaussianRational(1 / r)})


# -- structural checks -------------------------------------------------------------


def _monomials(max_degree: int):
    for d in range(max_degree + 1):
        for idx in product(range(d + 1), repeat=3):
            if sum(idx) == d:
                yield idx


@dataclass
class CocycleReport:
    holds: bool
    checked: int
    failures: list = field(default_factory=list)


def check_cocycle(F: TwistBivector, degree: int = 3) -> CocycleReport:
    """Compare both sides of the twist cocycle identity on monomial triples.

    Left side ``F_12 (Delta_0 (x) 1)(F)``, right side ``F_23 (1 (x) Delta_0)(F)``,
    each applied to ``f (x) g (x) h`` and multiplied out.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    mode = F.kind.mode
    legs = F.legs
    f12 = [(c, (L, R, None)) for c, L, R in legs]
    f23 = [(c, (None, L, R)) for c, L, R in legs]
    delta_left = [(c, (L, None, R)) for c, L, R in legs] + [(c, (None, L, R)) for c, L, R in legs]
    delta_right = [(c, (L, R, None)) for c, L, R in legs] + [(c, (L, None, R)) for c, L, R in legs]
    monos = list(_monomials(degree))
    one = ScalarField.constant(1)
    report = CocycleReport(True, 0)
    for a in monos:
        for b in monos:
            for c in monos:
                if sum(a) + sum(b) + sum(c) > degree:
                    continue
                triple = tuple(SpaceExpr.monomial(m, ScalarField.constant(1, mode)) for m in (a, b, c))
                guard = 1 + degree
                lhs = exp_action(f12, exp_action(delta_left, {triple: one}, max_order=guard), max_order=guard)
                rhs = exp_action(f23, exp_action(delta_right, {triple: one}, max_order=guard), max_order=guard)
                report.checked += 1
                if contract_tensor(lhs) != contract_tensor(rhs):
                    report.holds = False
                    report.failures.append((a, b, c))
    return report


NC_TYPES = ("commutative", "canonical", "Lie-algebraic", "quadratic", "higher-order")


def classify_nc_type(w: ScalarField) -> str:
    """Type of ``[x1, x2] = i w(t)`` by the degree of ``w`` in ``t = x0/c``."""
    if w.mode != FLAT:
        raise ValueError("classification needs a contracted (flat) commutator")
    if w.is_zero():
        return "commutative"
    return NC_TYPES[min(w.degree_in_t() + 1, 4)]


# -- text input ----------------------------------------------------------------------


def twist_from_text(text: str, kind: AlgebraKind = NH_PLUS) -> TwistBivector:
    """``none``, a preset name ``alpha1``..``alpha6``, or an explicit bivector."""
    from .syntax import elaborate_coefficient, parse_bivector

    stripped = text.strip()
    if stripped in ("none", "0", ""):
        return identity_twist(kind)
    if stripped.startswith("alpha") and stripped[5:].isdigit() and len(stripped) == 6:
        return preset(int(stripped[5:]), kind)
    wedges = parse_bivector(stripped)
    try:
        terms = tuple((elaborate_coefficient(w.coeff), w.left, w.right) for w in wedges)
        return TwistBivector(terms, kind)
    except GeneratorError as exc:
        raise TwistError(str(exc)) from exc
