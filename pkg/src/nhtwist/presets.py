"""Closed forms for the six preset deformations.

``deformation(a, mode)`` is the noncommutativity function f(t) with
``[x1, x2] = i f(t)``, written with the space parameter ``kappa_a``;
``rate(a, mode)`` is its stated time derivative h(t).  The flat-mode tables
hold the contracted functions w(t) and their derivatives g(t).  The engine
only uses ``deformation`` to read off the rational factor relating ``kappa_a``
to the twist parameter ``alpha_a``; every other result is computed directly
from the twist and compared against these tables.
"""

from __future__ import annotations

from fractions import Fraction

from .coefficients import FLAT, HYPERBOLIC, ScalarField, cosh_like, sinh_like

PRESETS = (1, 2, 3, 4, 5, 6)

# Wedge carriers: preset -> (left family, right family).
CARRIERS = {1: ("P", "P"), 2: ("K", "P"), 3: ("K", "K"), 4: ("F", "F"), 5: ("F", "P"), 6: ("K", "F")}


def _parts(mode: str):
    sign = 1 if mode == HYPERBOLIC else -1
    tau = ScalarField.tau(1, mode)
    return sign, tau, cosh_like(mode), sinh_like(mode)


def deformation(a: int, mode: str) -> ScalarField:
    sign, tau, C, S = _parts(mode)
    kappa = ScalarField.param(f"kappa{a}", mode)
    return {
        1: lambda: kappa * C * C,
        2: lambda: kappa * tau * C * S,
        3: lambda: kappa * tau ** 2 * S * S,
        4: lambda: kappa * tau ** 4 * (C - 1) ** 2 * 4,
        5: lambda: kappa * tau ** 2 * (C - 1) * C * sign,
        6: lambda: kappa * tau ** 3 * (C - 1) * S * sign,
    }[a]()


def rate(a: int, mode: str) -> ScalarField:
    sign, tau, C, S = _parts(mode)
    kappa = ScalarField.param(f"kappa{a}", mode)
    C2, S2 = cosh_like(mode, 2), sinh_like(mode, 2)
    # S(t/2tau)^2 = sign * (C - 1) / 2; the half angle has no integer frequency.
    half_s_sq = (C - 1) * Fraction(sign, 2)
    return {
        1: lambda: kappa * S2 * ScalarField.tau(-1, mode) * sign,
        2: lambda: kappa * C2,
        3: lambda: kappa * tau * S2,
        4: lambda: kappa * tau ** 3 * S * (C - 1) * (8 * sign),
        5: lambda: kappa * tau * (S2 - S),
        6: lambda: kappa * tau ** 2 * (C * 2 + 1) * half_s_sq * 2,
    }[a]()


def contracted_deformation(a: int) -> ScalarField:
    kappa = ScalarField.param(f"kappa{a}")
    t = ScalarField.time
    half = Fraction(1, 2)
    return {1: kappa, 2: kappa * t(1), 3: kappa * t(2), 4: kappa * t(4), 5: kappa * t(2) * half, 6: kappa * t(3) * half}[a]


def contracted_rate(a: int) -> ScalarField:
    kappa = ScalarField.param(f"kappa{a}")
    t = ScalarField.time
    return {
        1: ScalarField.zero(FLAT),
        2: kappa,
        3: kappa * t(1) * 2,
        4: kappa * t(3) * 4,
        5: kappa * t(1),
        6: kappa * t(2) * Fraction(3, 2),
    }[a]
