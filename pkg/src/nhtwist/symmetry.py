"""Classical generators acting on twisted commutation relations.

The generators act through the undeformed coproduct ``a (x) 1 + 1 (x) a``, so
on a star product ``h |> (f * g) = (h |> f) * g + f * (h |> g)``.  A generator
survives when it annihilates every relation
``[x_i, x_j]_* - i f(t) (d_1i d_2j - d_1j d_2i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coefficients import I, ScalarField
from .generators import AlgebraKind, apply, is_subalgebra, standard_rep
from .spacetime import SpaceExpr
from .twist import (
    TwistBivector,
    coordinate,
    noncommutativity,
    star_product,
)

Slot = tuple  # (i, j), axes 0..3 with 0 the time coordinate


def act_classical(h: str, F: TwistBivector, f: SpaceExpr, g: SpaceExpr) -> SpaceExpr:
    """``(h |> f) * g + f * (h |> g)`` with the twisted star product."""
    op = standard_rep(h, F.kind)
    return star_product(F, apply(op, f), g) + star_product(F, f, apply(op, g))


def _slot_structure(i: int, j: int) -> int:
    return (i == 1 and j == 2) - (i == 2 and j == 1)


def reference_relation(F: TwistBivector, i: int, j: int, f: ScalarField | None = None) -> SpaceExpr:
    """The stated value ``i f(t) (d_1i d_2j - d_1j d_2i)`` of slot ``(i, j)``."""
    f = noncommutativity(F) if f is None else f
    return SpaceExpr.scalar(f * I * _slot_structure(i, j)).with_mode(F.kind.mode) if f else SpaceExpr.zero(F.kind.mode)


def covariance_residual(h: str, F: TwistBivector, f: ScalarField | None = None) -> dict[Slot, SpaceExpr]:
    """``h |> ([x_i, x_j]_* - reference)`` for every ordered pair of distinct axes."""
    f = noncommutativity(F) if f is None else f
    op = standard_rep(h, F.kind)
    xs = [coordinate(a, F.kind) for a in range(4)]
    acted = [apply(op, x) for x in xs]
    residual = {}
    for i in range(4):
        for j in range(i + 1, 4):
            lhs = (
                star_product(F, acted[i], xs[j])
                + star_product(F, xs[i], acted[j])
                - star_product(F, acted[j], xs[i])
                - star_product(F, xs[j], acted[i])
            )
            value = lhs - apply(op, reference_relation(F, i, j, f))
            residual[(i, j)] = value
            residual[(j, i)] = -value
    return residual


@dataclass
class CovarianceReport:
    twist: TwistBivector
    f: ScalarField
    residuals: dict[str, dict[Slot, SpaceExpr]] = field(default_factory=dict)

    @property
    def kind(self) -> AlgebraKind:
        return self.twist.kind

    def invariant(self, h: str) -> bool:
        return all(not v for v in self.residuals[h].values())

    @property
    def unbroken(self) -> list[str]:
        return [h for h in self.residuals if self.invariant(h)]

    @property
    def broken(self) -> list[str]:
        return [h for h in self.residuals if not self.invariant(h)]

    @property
    def h_of_t(self) -> ScalarField:
        """The H residual at slot (1, 2); equals df/dt."""
        value = self.residuals["H"][(1, 2)]
        return value.scalar_part() if value else ScalarField.zero(self.kind.mode)

    def is_closed(self) -> bool:
        return is_subalgebra(self.unbroken, self.kind)


def classify_unbroken(F: TwistBivector, generators=None) -> CovarianceReport:
    """Residuals of every generator (or the given subset)."""
    f = noncommutativity(F)
    report = CovarianceReport(F, f)
    for h in generators or F.kind.generators:
        report.residuals[h] = covariance_residual(h, F, f)
    return report


@dataclass(frozen=True)
class DerivativeCheck:
    holds: bool
    residual: ScalarField
    derivative: ScalarField


def check_h_is_dfdt(F: TwistBivector) -> DerivativeCheck:
    f = noncommutativity(F)
    value = covariance_residual("H", F, f)[(1, 2)]
    if not value.is_scalar():
        return DerivativeCheck(False, ScalarField.zero(F.kind.mode), f.d_dt())
    h = value.scalar_part() if value else ScalarField.zero(F.kind.mode)
    return DerivativeCheck(h == f.d_dt(), h, f.d_dt())


def leibniz_defect(h: str, F: TwistBivector, f: SpaceExpr, g: SpaceExpr) -> SpaceExpr:
    """``h |> (f * g)`` minus the classical-coproduct action; zero when the twist is h-invariant."""
    op = standard_rep(h, F.kind)
    return apply(op, star_product(F, f, g)) - act_classical(h, F, f, g)
