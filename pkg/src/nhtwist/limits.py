"""Exact tau -> infinity limits of fields and expressions."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .coefficients import FLAT, TRIGONOMETRIC, GaussianRational, I, ScalarField
from .spacetime import SpaceExpr


class DivergenceError(ArithmeticError):
    def __init__(self, result: "LimitResult"):
        self.result = result
        super().__init__(f"limit diverges like tau^{result.power}")


@dataclass(frozen=True)
class LimitResult:
    """Either a flat ``value`` or the leading divergent ``tau**power`` coefficient."""

    value: object = None
    power: int | None = None
    coefficient: object = None

    @property
    def converges(self) -> bool:
        return self.power is None

    def unwrap(self):
        if not self.converges:
            raise DivergenceError(self)
        return self.value


def _tau_expansion(f: ScalarField) -> dict[int, ScalarField]:
    """Coefficients of non-negative powers of tau after expanding every beta_k."""
    rate = I if f.mode == TRIGONOMETRIC else GaussianRational(1)
    buckets: dict[int, dict] = {}
    for (m, k, p, q), c in f.items():
        if p < 0:
            continue
        # beta_k = sum_n (rate*k*t)^n / n! * tau^-n; only n <= p survives.
        for n in range(0, p + 1 if k else 1):
            coeff = c * (rate * k) ** n / factorial(n)
            bucket = buckets.setdefault(p - n, {})
            key = (m + n, 0, 0, q)
            bucket[key] = bucket[key] + coeff if key in bucket else coeff
    return {power: ScalarField(terms, FLAT) for power, terms in buckets.items()}


def tau_limit(f: ScalarField) -> LimitResult:
    """Limit of a field as tau grows, at fixed t."""
    if f.mode == FLAT:
        return LimitResult(value=f)
    expansion = _tau_expansion(f)
    for power in sorted(expansion, reverse=True):
        if power > 0 and expansion[power]:
            return LimitResult(power=power, coefficient=expansion[power])
    return LimitResult(value=expansion.get(0, ScalarField.zero(FLAT)))


def tau_limit_expr(e: SpaceExpr) -> LimitResult:
    """Coefficient-wise limit of a space expression."""
    values, worst = {}, None
    divergent: dict[int, dict] = {}
    for idx, field in e.items():
        r = tau_limit(field)
        if r.converges:
            values[idx] = r.value
        else:
            divergent.setdefault(r.power, {})[idx] = r.coefficient
            worst = r.power if worst is None else max(worst, r.power)
    if worst is not None:
        return LimitResult(power=worst, coefficient=SpaceExpr(divergent[worst], FLAT))
    return LimitResult(value=SpaceExpr(values, FLAT))
