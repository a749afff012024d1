"""The tau -> infinity contraction of the Newton-Hooke results to Galilei ones."""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import ScalarField
from .generators import GALILEI, NH_MINUS, NH_PLUS, AlgebraKind
from .limits import DivergenceError, LimitResult, tau_limit, tau_limit_expr
from .symmetry import covariance_residual
from .twist import TwistBivector, noncommutativity, preset, to_kappa

__all__ = [
    "ContractionError",
    "ContractedPair",
    "DivergenceError",
    "LimitResult",
    "contract_table",
    "contract_twist",
    "tau_limit",
    "tau_limit_expr",
]


class ContractionError(AssertionError):
    pass


@dataclass(frozen=True)
class ContractedPair:
    w: ScalarField  # lim f
    g: ScalarField  # lim h

    def __iter__(self):
        return iter((self.w, self.g))


def _h_of(F: TwistBivector, f: ScalarField) -> ScalarField:
    value = covariance_residual("H", F, f)[(1, 2)]
    return value.scalar_part() if value else ScalarField.zero(F.kind.mode)


def contract_twist(F: TwistBivector) -> tuple[LimitResult, LimitResult]:
    """Limits of f(t) and of the H residual h(t) for a Newton-Hooke twist."""
    f = noncommutativity(F)
    return tau_limit(f), tau_limit(_h_of(F, f))


def contract_table(a: int, kind: AlgebraKind = NH_PLUS) -> ContractedPair:
    """``(w, g)`` for preset ``a``, written with ``kappa_a``.

    Checks on the way that ``g = dw/dt`` and that deforming the Galilei algebra
    directly gives the same pair.
    """
    if kind.family == "galilei":
        raise ValueError("contract_table starts from a Newton-Hooke kind")
    lw, lg = contract_twist(preset(a, kind))
    w = to_kappa(lw.unwrap(), a, kind)
    g = to_kappa(lg.unwrap(), a, kind)
    if g != w.d_dt():
        raise ContractionError(f"preset {a}: limit of h is not the derivative of the limit of f")
    galilei = AlgebraKind("galilei", kind.with_acceleration)
    G = preset(a, galilei)
    f_direct = noncommutativity(G)
    w_direct = to_kappa(f_direct, a, galilei)
    g_direct = to_kappa(_h_of(G, f_direct), a, galilei)
    if (w_direct, g_direct) != (w, g):
        raise ContractionError(f"preset {a}: contraction and deformation do not commute")
    return ContractedPair(w, g)


def contract_both_signs(a: int) -> ContractedPair:
    plus, minus = contract_table(a, NH_PLUS), contract_table(a, NH_MINUS)
    if (plus.w, plus.g) != (minus.w, minus.g):
        raise ContractionError(f"preset {a}: NH+ and NH- contract differently")
    return plus


__all__ += ["contract_both_signs", "GALILEI"]
