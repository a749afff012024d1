"""Exact coefficient ring for time- and tau-dependent scalar fields.

A :class:`ScalarField` is a finite sum

    c * t**m * tau**p * beta_k

where ``beta_k = exp(k t / tau)`` (hyperbolic mode) or ``exp(i k t / tau)``
(trigonometric mode) and ``c`` is a Gaussian-rational multiple of a monomial in
the twist/space parameters.  Working in the exponential basis makes products
plain frequency addition, so the stored term map is a canonical form and
structural equality is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

HYPERBOLIC = "hyperbolic"
TRIGONOMETRIC = "trigonometric"
FLAT = "flat"
MODES = (HYPERBOLIC, TRIGONOMETRIC, FLAT)

PARAMETERS = tuple(f"alpha{a}" for a in range(1, 7)) + tuple(f"kappa{a}" for a in range(1, 7))


class ModeError(ValueError):
    """Raised when hyperbolic and trigonometric quantities are combined."""


def combine_modes(a: str, b: str) -> str:
    if a == b or b == FLAT:
        return a
    if a == FLAT:
        return b
    raise ModeError(f"cannot combine {a} and {b} fields")


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, str):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / norm, -o.im / norm)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __pow__(self, n: int):
        base = self if n >= 0 else GaussianRational(1) / self
        result = GaussianRational(1)
        for _ in range(abs(n)):
            result = result * base
        return result

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}+{self.im}*i)"


I = GaussianRational(0, 1)

# ((symbol, exponent), ...) sorted by symbol; zero exponents never stored.
ParamMonomial = tuple


def monomial(exponents: Mapping[str, int] | None = None) -> ParamMonomial:
    exponents = exponents or {}
    for sym, e in exponents.items():
        if sym not in PARAMETERS:
            raise ValueError(f"unknown parameter {sym!r}")
        if e < 0:
            raise ValueError(f"negative exponent for {sym}")
    return tuple(sorted((s, e) for s, e in exponents.items() if e))


def monomial_mul(a: ParamMonomial, b: ParamMonomial) -> ParamMonomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items()))


# Term key: (m, k, p, params); m = power of t, k = frequency, p = power of tau.
TermKey = tuple


class ScalarField:
    """Canonical sum of ``c * t^m * tau^p * beta_k`` terms.

    Instances are immutable; arithmetic returns new fields.
    """

    __slots__ = ("mode", "_terms", "_hash")

    def __init__(self, terms: Mapping[TermKey, object] | Iterable = (), mode: str = FLAT):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[TermKey, GaussianRational] = {}
        for key, c in items:
            m, k, p, mono = key
            c = GaussianRational.coerce(c)
            if not c:
                continue
            if m < 0:
                raise ValueError("negative power of t")
            if mode == FLAT and (k or p):
                raise ModeError("flat fields carry no tau or beta_k dependence")
            prev = clean.get(key)
            c = c if prev is None else prev + c
            if c:
                clean[key] = c
            else:
                del clean[key]
        self.mode = mode
        self._terms = dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0])))
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, mode: str = FLAT) -> "ScalarField":
        return cls({}, mode)

    @classmethod
    def constant(cls, value=1, mode: str = FLAT) -> "ScalarField":
        return cls({(0, 0, 0, ()): value}, mode)

    @classmethod
    def param(cls, symbol: str, mode: str = FLAT) -> "ScalarField":
        return cls({(0, 0, 0, monomial({symbol: 1})): 1}, mode)

    @classmethod
    def time(cls, power: int = 1, mode: str = FLAT) -> "ScalarField":
        return cls({(power, 0, 0, ()): 1}, mode)

    @classmethod
    def tau(cls, power: int = 1, mode: str = HYPERBOLIC) -> "ScalarField":
        return cls({(0, 0, power, ()): 1}, mode)

    @classmethod
    def beta(cls, k: int, mode: str) -> "ScalarField":
        return cls({(0, k, 0, ()): 1}, mode)

    # -- access ------------------------------------------------------------

    @property
    def terms(self) -> dict[TermKey, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[TermKey, GaussianRational]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_time_independent(self) -> bool:
        return all(m == 0 and k == 0 for (m, k, _, _) in self._terms)

    def is_oscillation_free(self) -> bool:
        return all(k == 0 for (_, k, _, _) in self._terms)

    def degree_in_t(self) -> int:
        return max((m for (m, _, _, _) in self._terms), default=-1)

    def max_tau_power(self) -> int | None:
        return max((p for (_, _, p, _) in self._terms), default=None)

    def constant_value(self) -> GaussianRational | None:
        """The value if the field is a pure number, else ``None``."""
        if not self._terms:
            return GaussianRational(0)
        if len(self._terms) == 1:
            (key, c), = self._terms.items()
            if key == (0, 0, 0, ()):
                return c
        return None

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            other = ScalarField.constant(other)
        if not isinstance(other, ScalarField):
            return NotImplemented
        if self._terms != other._terms:
            return False
        # beta_0 = 1 in every mode, so oscillation-free fields compare across modes.
        return (
            self.mode == other.mode
            or FLAT in (self.mode, other.mode)
            or self.is_oscillation_free()
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- ring operations ---------------------------------------------------

    def _lift(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            return other
        return ScalarField.constant(GaussianRational.coerce(other))

    def _joint_mode(self, other: "ScalarField") -> str:
        # tau and t alone mean the same thing in both oscillating modes
        if {self.mode, other.mode} == {HYPERBOLIC, TRIGONOMETRIC}:
            if self.is_oscillation_free():
                return other.mode
            if other.is_oscillation_free():
                return self.mode
        return combine_modes(self.mode, other.mode)

    def __add__(self, other):
        other = self._lift(other)
        mode = self._joint_mode(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return ScalarField(terms, mode)

    __radd__ = __add__

    def __neg__(self):
        return ScalarField({key: -c for key, c in self._terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, ScalarField):
            c = GaussianRational.coerce(other)
            return ScalarField({key: v * c for key, v in self._terms.items()}, self.mode)
        mode = self._joint_mode(other)
        terms: dict[TermKey, GaussianRational] = {}
        for (m1, k1, p1, q1), c1 in self._terms.items():
            for (m2, k2, p2, q2), c2 in other._terms.items():
                key = (m1 + m2, k1 + k2, p1 + p2, monomial_mul(q1, q2))
                c = c1 * c2
                terms[key] = terms[key] + c if key in terms else c
        return ScalarField(terms, mode)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = ScalarField.constant(1, self.mode)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def d_dt(self) -> "ScalarField":
        """Exact time derivative."""
        rate = I if self.mode == TRIGONOMETRIC else GaussianRational(1)
        terms: dict[TermKey, GaussianRational] = {}
        for (m, k, p, q), c in self._terms.items():
            if m:
                key = (m - 1, k, p, q)
                terms[key] = terms.get(key, GaussianRational(0)) + c * m
            if k:
                key = (m, k, p - 1, q)
                terms[key] = terms.get(key, GaussianRational(0)) + c * rate * k
        return ScalarField(terms, self.mode)

    def at_zero_time(self) -> "ScalarField":
        """Value at ``t = 0`` (beta_k -> 1, t^m -> 0 for m > 0)."""
        terms: dict[TermKey, GaussianRational] = {}
        for (m, k, p, q), c in self._terms.items():
            if m == 0:
                key = (0, 0, p, q)
                terms[key] = terms.get(key, GaussianRational(0)) + c
        return ScalarField(terms, self.mode)

    def substitute(self, values: Mapping[str, object]) -> "ScalarField":
        """Replace parameters by exact numbers (or by other fields)."""
        result = ScalarField.zero(self.mode)
        for (m, k, p, q), c in self._terms.items():
            term = ScalarField({(m, k, p, ()): c}, self.mode)
            rest = []
            for sym, e in q:
                if sym in values:
                    v = values[sym]
                    v = v if isinstance(v, ScalarField) else ScalarField.constant(GaussianRational.coerce(v))
                    term = term * v ** e
                else:
                    rest.append((sym, e))
            if rest:
                term = term * ScalarField({(0, 0, 0, tuple(rest)): 1})
            result = result + term
        return result

    def rename_param(self, old: str, new: str, factor=1) -> "ScalarField":
        """Substitute ``old -> factor * new``."""
        return self.substitute({old: ScalarField.param(new) * GaussianRational.coerce(factor)})

    def with_mode(self, mode: str) -> "ScalarField":
        return ScalarField(self._terms, mode)

    def parameters(self) -> set[str]:
        return {s for (_, _, _, q) in self._terms for s, _ in q}

    def __repr__(self):
        inner = ", ".join(f"{key}: {c}" for key, c in self._terms.items())
        return f"ScalarField({{{inner}}}, mode={self.mode!r})"


def _sort_key(key: TermKey):
    m, k, p, q = key
    return (m, k, p, q)


def cosh_like(mode: str, k: int = 1) -> ScalarField:
    """``C(k t/tau)``: cosh in hyperbolic mode, cos in trigonometric mode."""
    if mode == FLAT:
        raise ModeError("cosh/cos undefined in flat mode")
    half = Fraction(1, 2)
    if k == 0:
        return ScalarField.constant(1, mode)
    return ScalarField({(0, k, 0, ()): half, (0, -k, 0, ()): half}, mode)


def sinh_like(mode: str, k: int = 1) -> ScalarField:
    """``S(k t/tau)``: sinh in hyperbolic mode, sin in trigonometric mode."""
    if mode == FLAT:
        raise ModeError("sinh/sin undefined in flat mode")
    if k == 0:
        return ScalarField.zero(mode)
    scale = GaussianRational(Fraction(1, 2)) if mode == HYPERBOLIC else GaussianRational(0, Fraction(-1, 2))
    return ScalarField({(0, k, 0, ()): scale, (0, -k, 0, ()): -scale}, mode)


def multiply(f: ScalarField, g: ScalarField) -> ScalarField:
    return f * g


def d_dt(f: ScalarField) -> ScalarField:
    return f.d_dt()


def proportionality(f: ScalarField, g: ScalarField) -> GaussianRational | None:
    """Return ``c`` with ``f == c * g`` exactly, or ``None``."""
    if g.is_zero():
        return GaussianRational(0) if f.is_zero() else None
    if f.is_zero():
        return GaussianRational(0)
    key = next(iter(g._terms))
    if key not in f._terms:
        return None
    c = f._terms[key] / g._terms[key]
    return c if f == g * c else None
