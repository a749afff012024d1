"""Polynomials in the spatial coordinates with :class:`ScalarField` coefficients.

This is the function module the symmetry generators act on.  Time is not a
polynomial generator: it lives inside the coefficients.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .coefficients import FLAT, GaussianRational, ScalarField, combine_modes

XIndex = tuple  # (e1, e2, e3)
ORIGIN: XIndex = (0, 0, 0)


def _unit(axis: int) -> XIndex:
    return tuple(1 if a == axis else 0 for a in (1, 2, 3))


class SpaceExpr:
    """Canonical map ``(e1, e2, e3) -> ScalarField``.  Immutable."""

    __slots__ = ("mode", "_terms", "_hash")

    def __init__(self, terms: Mapping[XIndex, ScalarField] = None, mode: str = FLAT):
        mode_ = mode
        clean = {}
        for idx, coeff in (terms or {}).items():
            if len(idx) != 3 or any(e < 0 for e in idx):
                raise ValueError(f"bad coordinate multi-index {idx!r}")
            if not isinstance(coeff, ScalarField):
                coeff = ScalarField.constant(coeff)
            mode_ = combine_modes(mode_, coeff.mode)
            if coeff:
                clean[tuple(idx)] = coeff
        self.mode = mode_
        self._terms = {idx: clean[idx] for idx in sorted(clean)}
        self._hash = None

    @classmethod
    def zero(cls, mode: str = FLAT) -> "SpaceExpr":
        return cls({}, mode)

    @classmethod
    def scalar(cls, field: ScalarField) -> "SpaceExpr":
        return cls({ORIGIN: field}, field.mode)

    @classmethod
    def constant(cls, value=1, mode: str = FLAT) -> "SpaceExpr":
        return cls.scalar(ScalarField.constant(value, mode))

    @classmethod
    def coordinate(cls, axis: int, mode: str = FLAT) -> "SpaceExpr":
        """``x_axis`` for axis 1..3, or the time coordinate ``t`` for axis 0."""
        if axis == 0:
            return cls.scalar(ScalarField.time(1, mode))
        if axis not in (1, 2, 3):
            raise ValueError(f"no coordinate axis {axis}")
        return cls({_unit(axis): ScalarField.constant(1, mode)}, mode)

    @classmethod
    def monomial(cls, index: XIndex, coeff: ScalarField | None = None) -> "SpaceExpr":
        coeff = ScalarField.constant(1) if coeff is None else coeff
        return cls({tuple(index): coeff}, coeff.mode)

    # -- access ------------------------------------------------------------

    @property
    def terms(self) -> dict[XIndex, ScalarField]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[XIndex, ScalarField]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree in the spatial coordinates (-1 for zero)."""
        return max((sum(idx) for idx in self._terms), default=-1)

    def is_scalar(self) -> bool:
        return all(idx == ORIGIN for idx in self._terms)

    def scalar_part(self) -> ScalarField:
        return self._terms.get(ORIGIN, ScalarField.zero(self.mode))

    def coefficient(self, index: XIndex) -> ScalarField:
        return self._terms.get(tuple(index), ScalarField.zero(self.mode))

    def __eq__(self, other):
        if isinstance(other, ScalarField):
            other = SpaceExpr.scalar(other)
        elif isinstance(other, (int, GaussianRational)):
            other = SpaceExpr.constant(other)
        if not isinstance(other, SpaceExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- ring --------------------------------------------------------------

    @staticmethod
    def _lift(other) -> "SpaceExpr":
        if isinstance(other, SpaceExpr):
            return other
        if isinstance(other, ScalarField):
            return SpaceExpr.scalar(other)
        return SpaceExpr.constant(GaussianRational.coerce(other))

    def __add__(self, other):
        other = self._lift(other)
        mode = combine_modes(self.mode, other.mode)
        terms = dict(self._terms)
        for idx, c in other._terms.items():
            terms[idx] = terms[idx] + c if idx in terms else c
        return SpaceExpr(terms, mode)

    __radd__ = __add__

    def __neg__(self):
        return SpaceExpr({idx: -c for idx, c in self._terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, ScalarField):
            mode = combine_modes(self.mode, other.mode)
            return SpaceExpr({idx: c * other for idx, c in self._terms.items()}, mode)
        if not isinstance(other, SpaceExpr):
            c = GaussianRational.coerce(other)
            return SpaceExpr({idx: v * c for idx, v in self._terms.items()}, self.mode)
        mode = combine_modes(self.mode, other.mode)
        terms: dict[XIndex, ScalarField] = {}
        for i1, c1 in self._terms.items():
            for i2, c2 in other._terms.items():
                idx = (i1[0] + i2[0], i1[1] + i2[1], i1[2] + i2[2])
                prod = c1 * c2
                terms[idx] = terms[idx] + prod if idx in terms else prod
        return SpaceExpr(terms, mode)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = SpaceExpr.constant(1, self.mode)
        for _ in range(n):
            result = result * self
        return result

    # -- derivations -------------------------------------------------------

    def d_dx(self, axis: int) -> "SpaceExpr":
        """Partial derivative along ``x_axis`` (axis 1..3)."""
        if axis not in (1, 2, 3):
            raise ValueError(f"no spatial axis {axis}")
        a = axis - 1
        terms = {}
        for idx, c in self._terms.items():
            e = idx[a]
            if e:
                new = list(idx)
                new[a] = e - 1
                terms[tuple(new)] = c * e
        return SpaceExpr(terms, self.mode)

    def d_dt(self) -> "SpaceExpr":
        return SpaceExpr({idx: c.d_dt() for idx, c in self._terms.items()}, self.mode)

    def map_coefficients(self, fn) -> "SpaceExpr":
        return SpaceExpr({idx: fn(c) for idx, c in self._terms.items()})

    def substitute(self, values) -> "SpaceExpr":
        return SpaceExpr({idx: c.substitute(values) for idx, c in self._terms.items()}, self.mode)

    def with_mode(self, mode: str) -> "SpaceExpr":
        return SpaceExpr({idx: c.with_mode(mode) for idx, c in self._terms.items()}, mode)

    def __repr__(self):
        from .printing import print_text

        return f"SpaceExpr({print_text(self)!r}, mode={self.mode!r})"

    def __str__(self):
        from .printing import print_text

        return print_text(self)


def d_dxi(e: SpaceExpr, axis: int) -> SpaceExpr:
    return e.d_dx(axis)


def d_dt(e: SpaceExpr) -> SpaceExpr:
    return e.d_dt()
