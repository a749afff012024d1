"""Differential realizations of the Newton-Hooke and Galilei generators.

Generators are named by strings: ``"H"``, ``"P1"``..``"P3"``, ``"K1"``..,
``"F1"``.. (constant accelerations) and ``"M12"``, ``"M13"``, ``"M23"``.  The
Galilei realization is not written down by hand; it is the coefficient-wise
``tau -> infinity`` limit of the Newton-Hooke one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb

from .coefficients import (
    FLAT,
    HYPERBOLIC,
    TRIGONOMETRIC,
    GaussianRational,
    I,
    ScalarField,
    combine_modes,
    cosh_like,
    sinh_like,
)
from .limits import tau_limit_expr
from .spacetime import SpaceExpr

DerivIndex = tuple  # (a, b1, b2, b3): powers of d/dt, d/dx1, d/dx2, d/dx3


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraKind:
    family: str  # "nh_plus" | "nh_minus" | "galilei"
    with_acceleration: bool = True

    def __post_init__(self):
        if self.family not in ("nh_plus", "nh_minus", "galilei"):
            raise ValueError(f"unknown algebra family {self.family!r}")

    @property
    def mode(self) -> str:
        return {"nh_plus": HYPERBOLIC, "nh_minus": TRIGONOMETRIC, "galilei": FLAT}[self.family]

    @property
    def sign(self) -> int:
        return {"nh_plus": 1, "nh_minus": -1, "galilei": 0}[self.family]

    @property
    def label(self) -> str:
        return self.family.replace("_", "-")

    @property
    def generators(self) -> tuple[str, ...]:
        names = ["H"] + [f"P{i}" for i in (1, 2, 3)] + [f"K{i}" for i in (1, 2, 3)]
        if self.with_acceleration:
            names += [f"F{i}" for i in (1, 2, 3)]
        return tuple(names + ["M12", "M13", "M23"])

    def without_acceleration(self) -> "AlgebraKind":
        return AlgebraKind(self.family, False)


NH_PLUS = AlgebraKind("nh_plus")
NH_MINUS = AlgebraKind("nh_minus")
GALILEI = AlgebraKind("galilei")

_NAME_RE = re.compile(r"(?:(H)|([PKF])([123])|M([123])([123]))\Z")


def normalize_generator(name: str) -> tuple[str, int]:
    """Canonical name and sign; ``M21 -> ("M12", -1)``."""
    m = _NAME_RE.match(name)
    if not m:
        raise GeneratorError(f"unknown generator {name!r}")
    if m.group(4):
        i, j = int(m.group(4)), int(m.group(5))
        if i == j:
            raise GeneratorError(f"{name} vanishes identically")
        return (f"M{i}{j}", 1) if i < j else (f"M{j}{i}", -1)
    return name, 1


# -- operators -----------------------------------------------------------------


def _partial(e: SpaceExpr, alpha: DerivIndex) -> SpaceExpr:
    a, *bs = alpha
    for _ in range(a):
        e = e.d_dt()
    for axis, b in zip((1, 2, 3), bs):
        for _ in range(b):
            if not e:
                return e
            e = e.d_dx(axis)
    return e


class DiffOperator:
    """Normal-ordered sum of ``coefficient * d_t^a d_1^b1 d_2^b2 d_3^b3``."""

    __slots__ = ("mode", "_terms", "_hash")

    def __init__(self, terms=None, mode: str = FLAT):
        clean = {}
        for alpha, c in (terms or {}).items():
            if not isinstance(c, SpaceExpr):
                c = SpaceExpr.scalar(c) if isinstance(c, ScalarField) else SpaceExpr.constant(c)
            mode = combine_modes(mode, c.mode)
            if c:
                clean[tuple(alpha)] = c
        self.mode = mode
        self._terms = {a: clean[a] for a in sorted(clean)}
        self._hash = None

    @classmethod
    def multiplication(cls, e) -> "DiffOperator":
        e = e if isinstance(e, SpaceExpr) else SpaceExpr.scalar(e)
        return cls({(0, 0, 0, 0): e}, e.mode)

    @classmethod
    def d_t(cls, coeff=None) -> "DiffOperator":
        coeff = SpaceExpr.constant(1) if coeff is None else coeff
        return cls({(1, 0, 0, 0): coeff})

    @classmethod
    def d_x(cls, axis: int, coeff=None) -> "DiffOperator":
        coeff = SpaceExpr.constant(1) if coeff is None else coeff
        alpha = [0, 0, 0, 0]
        alpha[axis] = 1
        return cls({tuple(alpha): coeff})

    def items(self):
        return iter(self._terms.items())

    @property
    def terms(self):
        return dict(self._terms)

    def order(self) -> int:
        return max((sum(a) for a in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other):
        terms = dict(self._terms)
        for a, c in other._terms.items():
            terms[a] = terms[a] + c if a in terms else c
        return DiffOperator(terms, combine_modes(self.mode, other.mode))

    def __neg__(self):
        return DiffOperator({a: -c for a, c in self._terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "DiffOperator":
        """Left multiplication by a function or number."""
        return DiffOperator({a: c * factor for a, c in self._terms.items()}, self.mode)

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __call__(self, e: SpaceExpr) -> SpaceExpr:
        return apply(self, e)

    def map_coefficients(self, fn) -> "DiffOperator":
        return DiffOperator({a: fn(c) for a, c in self._terms.items()})

    def __repr__(self):
        from .printing import print_text

        parts = [f"{a}: {print_text(c)}" for a, c in self._terms.items()]
        return f"DiffOperator({{{', '.join(parts)}}})"


def apply(op: DiffOperator, e: SpaceExpr) -> SpaceExpr:
    """Act with ``op`` on ``e``."""
    result = SpaceExpr.zero(combine_modes(op.mode, e.mode))
    for alpha, c in op.items():
        d = _partial(e, alpha)
        if d:
            result = result + c * d
    return result


def compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Normal-ordered product ``a o b`` (generalized Leibniz rule)."""
    terms: dict[DerivIndex, SpaceExpr] = {}
    for alpha, c in a.items():
        for beta, d in b.items():
            for gamma in product(*(range(n + 1) for n in alpha)):
                dd = _partial(d, gamma)
                if not dd:
                    continue
                weight = 1
                for n, g in zip(alpha, gamma):
                    weight *= comb(n, g)
                idx = tuple(x - g + y for x, g, y in zip(alpha, gamma, beta))
                term = c * dd * weight
                terms[idx] = terms[idx] + term if idx in terms else term
    return DiffOperator(terms, combine_modes(a.mode, b.mode))


def commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    return compose(a, b) - compose(b, a)


# -- realizations ----------------------------------------------------------------


def _nh_rep(name: str, kind: AlgebraKind) -> DiffOperator:
    mode, sign = kind.mode, kind.sign
    C, S = cosh_like(mode), sinh_like(mode)
    tau = ScalarField.tau(1, mode)
    i = SpaceExpr.constant(I, mode)
    if name == "H":
        return DiffOperator.d_t(i)
    kind_, idx = name[0], name[1:]
    if kind_ == "M":
        a, b = int(idx[0]), int(idx[1])
        xa, xb = SpaceExpr.coordinate(a, mode), SpaceExpr.coordinate(b, mode)
        return DiffOperator.d_x(b, i * xa) - DiffOperator.d_x(a, i * xb)
    axis = int(idx)
    if kind_ == "P":
        return DiffOperator.d_x(axis, i * C)
    if kind_ == "K":
        return DiffOperator.d_x(axis, i * tau * S)
    return DiffOperator.d_x(axis, i * tau * tau * (C - 1) * (2 * sign))


@lru_cache(maxsize=None)
def standard_rep(name: str, kind: AlgebraKind = NH_PLUS) -> DiffOperator:
    """Differential operator realizing generator ``name`` for ``kind``."""
    canonical, sign = normalize_generator(name)
    if canonical not in kind.generators:
        raise GeneratorError(f"{name} is not a generator of {kind.label}")
    if kind.family == "galilei":
        source = standard_rep(canonical, AlgebraKind("nh_plus", kind.with_acceleration))
        op = contract_operator(source)
    else:
        op = _nh_rep(canonical, kind)
    return op if sign > 0 else -op


def contract_operator(op: DiffOperator) -> DiffOperator:
    """Coefficient-wise tau -> infinity limit of an operator."""
    terms = {}
    for alpha, c in op.items():
        terms[alpha] = tau_limit_expr(c).unwrap()
    return DiffOperator(terms, FLAT)


# -- abstract brackets -----------------------------------------------------------

Combination = dict  # generator name -> ScalarField coefficient


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def _add(comb_: Combination, name: str, coeff: ScalarField):
    canonical, sign = (None, 0) if name[0] == "M" and name[1] == name[2] else normalize_generator(name)
    if canonical is None or not coeff:
        return
    total = comb_.get(canonical, ScalarField.zero(coeff.mode)) + coeff * sign
    if total:
        comb_[canonical] = total
    else:
        comb_.pop(canonical, None)


def bracket(a: str, b: str, kind: AlgebraKind) -> Combination:
    """Structure-constant value of ``[a, b]`` as a combination of generators."""
    a, sa = normalize_generator(a)
    b, sb = normalize_generator(b)
    mode = kind.mode
    iota = ScalarField.constant(I, mode)
    out: Combination = {}
    ta, tb = a[0], b[0]
    if a == b:
        return out
    if ta == "M" and tb == "M":
        i, j, k, l = int(a[1]), int(a[2]), int(b[1]), int(b[2])
        for d, name, s in (
            (_delta(i, l), f"M{j}{k}", 1),
            (_delta(j, l), f"M{i}{k}", -1),
            (_delta(j, k), f"M{i}{l}", 1),
            (_delta(i, k), f"M{j}{l}", -1),
        ):
            if d:
                _add(out, name, iota * s)
    elif ta == "M" and tb in "PKF":
        i, j, k = int(a[1]), int(a[2]), int(b[1])
        if _delta(j, k):
            _add(out, f"{tb}{i}", iota)
        if _delta(i, k):
            _add(out, f"{tb}{j}", -iota)
    elif tb == "M" and ta in "PKF":
        out = {n: -c for n, c in bracket(b, a, kind).items()}
    elif ta == "H" or tb == "H":
        other, flip = (b, 1) if ta == "H" else (a, -1)
        t, k = other[0], other[1:]
        if t == "P" and kind.sign:
            # [H, P_i] = +-(i / tau^2) K_i
            _add(out, f"K{k}", ScalarField({(0, 0, -2, ()): I * kind.sign}, mode) * flip)
        elif t == "K":
            _add(out, f"P{k}", iota * flip)
        elif t == "F":
            _add(out, f"K{k}", iota * 2 * flip)
    if sa * sb < 0:
        out = {n: -c for n, c in out.items()}
    return out


def bracket_table(kind: AlgebraKind) -> dict[tuple[str, str], Combination]:
    gens = kind.generators
    return {(a, b): bracket(a, b, kind) for n, a in enumerate(gens) for b in gens[n + 1:]}


def realize(combination: Combination, kind: AlgebraKind) -> DiffOperator:
    op = DiffOperator({}, kind.mode)
    for name, coeff in combination.items():
        op = op + standard_rep(name, kind).scale(coeff)
    return op


@dataclass(frozen=True)
class BracketCheck:
    left: str
    right: str
    expected: Combination
    computed: DiffOperator
    ok: bool


@dataclass
class AlgebraReport:
    kind: AlgebraKind
    checks: list[BracketCheck] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(c.ok for c in self.checks)

    def mismatches(self) -> list[BracketCheck]:
        return [c for c in self.checks if not c.ok]


def verify_algebra(kind: AlgebraKind) -> AlgebraReport:
    """Evaluate every bracket of the table in the differential realization."""
    report = AlgebraReport(kind)
    for (a, b), expected in bracket_table(kind).items():
        computed = commutator(standard_rep(a, kind), standard_rep(b, kind))
        report.checks.append(BracketCheck(a, b, expected, computed, computed == realize(expected, kind)))
    return report


def table_jacobi_violations(kind: AlgebraKind) -> list[tuple[str, str, str]]:
    """Triples where the abstract table breaks the Jacobi identity."""

    def br(x: Combination, y: Combination) -> Combination:
        out: Combination = {}
        for gx, cx in x.items():
            for gy, cy in y.items():
                for g, c in bracket(gx, gy, kind).items():
                    _add(out, g, c * cx * cy)
        return out

    one = ScalarField.constant(1, kind.mode)
    gens = kind.generators
    bad = []
    for n, a in enumerate(gens):
        for m in range(n + 1, len(gens)):
            for c in gens[m + 1:]:
                b = gens[m]
                A, B, Cc = {a: one}, {b: one}, {c: one}
                total: Combination = {}
                for x, y, z in ((A, B, Cc), (B, Cc, A), (Cc, A, B)):
                    for g, v in br(br(x, y), z).items():
                        _add(total, g, v)
                if total:
                    bad.append((a, b, c))
    return bad


def is_subalgebra(names, kind: AlgebraKind) -> bool:
    """True if the span of ``names`` is closed under the bracket."""
    names = set(names)
    return all(set(bracket(a, b, kind)) <= names for a in names for b in names)
