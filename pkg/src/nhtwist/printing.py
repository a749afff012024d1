"""Deterministic text, LaTeX and JSON renderings of fields and expressions.

Fields are stored in the exponential basis; the printers rebuild cosh/sinh
(or cos/sin) forms.  Each group of terms sharing a parameter monomial and
powers of ``t`` and ``tau`` is printed as

* a single term when conjugate-pair folding leaves one term,
* otherwise a product of ``C``, ``S``, ``(C - 1)``, ``(C + 1)`` factors when the
  group factorizes that way,
* otherwise the prefactor times the folded sum, cosh/cos before sinh/sin.

The text form is accepted by :func:`nhtwist.syntax.parse_expr`, so printing
round-trips exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .coefficients import (
    FLAT,
    HYPERBOLIC,
    GaussianRational,
    I,
    ScalarField,
    cosh_like,
    proportionality,
    sinh_like,
)
from .spacetime import SpaceExpr


@dataclass(frozen=True)
class _Style:
    mul: str
    latex: bool

    def pow(self, base: str, n: int) -> str:
        if n == 1:
            return base
        return f"{base}^{{{n}}}" if self.latex else f"{base}^{n}"

    def name(self, sym: str) -> str:
        if not self.latex:
            return sym
        for stem in ("alpha", "kappa"):
            if sym.startswith(stem):
                return f"\\{stem}_{{{sym[len(stem):]}}}"
        return {"tau": "\\tau", "i": "i"}.get(sym, sym)

    def func(self, kind: str, mode: str, k: int) -> str:
        name = ("cosh" if kind == "C" else "sinh") if mode == HYPERBOLIC else ("cos" if kind == "C" else "sin")
        if self.latex:
            arg = "\\frac{t}{\\tau}" if k == 1 else f"\\frac{{{k}t}}{{\\tau}}"
            return f"\\{name}\\left({arg}\\right)"
        arg = "t/tau" if k == 1 else f"{k}*t/tau"
        return f"{name}({arg})"

    def rational(self, q: Fraction) -> str:
        if q.denominator == 1 or not self.latex:
            return str(q)
        return f"\\frac{{{q.numerator}}}{{{q.denominator}}}"


TEXT = _Style(mul="*", latex=False)
LATEX = _Style(mul=" ", latex=True)


def _coefficient(c: GaussianRational, style: _Style) -> tuple[bool, str | None]:
    """Split a coefficient into (negative, magnitude string or None for 1)."""
    if c.im == 0:
        q = c.re
        return q < 0, (None if abs(q) == 1 else style.rational(abs(q)))
    if c.re == 0:
        q = c.im
        mag = "i" if abs(q) == 1 else f"{style.rational(abs(q))}{style.mul}i"
        return q < 0, mag
    re_s = style.rational(c.re)
    sign = "+" if c.im > 0 else "-"
    im = abs(c.im)
    im_s = "i" if im == 1 else f"{style.rational(im)}{style.mul}i"
    return False, f"({re_s} {sign} {im_s})"


def _product(c: GaussianRational, factors: list[str], tau_den: int, style: _Style) -> tuple[bool, str]:
    negative, mag = _coefficient(c, style)
    parts = ([mag] if mag else []) + factors
    if tau_den and style.latex:
        parts.append(style.pow("\\tau", -tau_den))
        tau_den = 0
    body = style.mul.join(parts) if parts else "1"
    if tau_den:
        body += "/" + style.pow("tau", tau_den)
    return negative, body


def _prefactor(m: int, p: int, mono, style: _Style) -> tuple[list[str], int]:
    factors = [style.pow(style.name(s), e) for s, e in mono]
    if m:
        factors.append(style.pow("t", m))
    if p > 0:
        factors.append(style.pow(style.name("tau"), p))
    return factors, (-p if p < 0 else 0)


def _fold_pairs(laurent: dict[int, GaussianRational], mode: str):
    """Rewrite ``sum c_k beta_k`` as ``[(coeff, kind, k)]`` with kind in {None, C, S}."""
    items = []
    ks = sorted({abs(k) for k in laurent if k}, reverse=True)
    zero = GaussianRational(0)
    for k in ks:
        cp, cm = laurent.get(k, zero), laurent.get(-k, zero)
        a = cp + cm
        b = cp - cm if mode == HYPERBOLIC else (cp - cm) * I
        if a:
            items.append((a, "C", k))
        if b:
            items.append((b, "S", k))
    if laurent.get(0):
        items.append((laurent[0], None, 0))
    return items


def _divide(poly: list[GaussianRational], divisor: list[GaussianRational]):
    """Exact division of ascending-coefficient polynomials; ``None`` if not exact."""
    poly = list(poly)
    dd = len(divisor) - 1
    if len(poly) - 1 < dd:
        return None
    quot = [GaussianRational(0)] * (len(poly) - dd)
    lead = divisor[-1]
    for i in range(len(poly) - 1, dd - 1, -1):
        q = poly[i] / lead
        quot[i - dd] = q
        if q:
            for j, d in enumerate(divisor):
                poly[i - dd + j] = poly[i - dd + j] - q * d
    if any(poly[:dd]):
        return None
    return quot


def _multiplicity(poly, divisor):
    n = 0
    while True:
        q = _divide(poly, divisor)
        if q is None:
            return n, poly
        poly, n = q, n + 1


def _factor(laurent: dict[int, GaussianRational], mode: str):
    """Find ``r, (c, s, u, v)`` with the group equal to r*C^c*S^s*(C-1)^u*(C+1)^v."""
    kmin, kmax = min(laurent), max(laurent)
    if kmin != -kmax or kmax == 0:
        return None
    poly = [laurent.get(k, GaussianRational(0)) for k in range(kmin, kmax + 1)]
    one = GaussianRational(1)
    a, poly = _multiplicity(poly, [-one, one])
    b, poly = _multiplicity(poly, [one, one])
    c, poly = _multiplicity(poly, [one, GaussianRational(0), one])
    if len(poly) != 1:
        return None
    s = min(a, b)
    if (a - s) % 2 or (b - s) % 2:
        return None
    u, v = (a - s) // 2, (b - s) // 2
    C, S = cosh_like(mode), sinh_like(mode)
    candidate = C ** c * S ** s * (C - 1) ** u * (C + 1) ** v
    target = ScalarField({(0, k, 0, ()): v_ for k, v_ in laurent.items()}, mode)
    r = proportionality(target, candidate)
    if r is None:
        return None
    return r, (c, s, u, v)


def _denominator(c: GaussianRational) -> int:
    return max(c.re.denominator, c.im.denominator)


def _field_pieces(f: ScalarField, style: _Style) -> list[tuple[bool, str]]:
    """Signed product terms ``(negative, body)`` whose sum is the field."""
    mode = f.mode
    groups: dict[tuple, dict[int, GaussianRational]] = {}
    for (m, k, p, q), c in f.items():
        groups.setdefault((m, p, q), {})[k] = c
    order = sorted(groups, key=lambda g: (-g[0], -g[1], g[2]))
    pieces = []
    for m, p, q in order:
        laurent = groups[(m, p, q)]
        pre, tau_den = _prefactor(m, p, q, style)
        if mode == FLAT or set(laurent) == {0}:
            pieces.append(_product(laurent[0], pre, tau_den, style))
            continue
        folded = _fold_pairs(laurent, mode)
        fac = _factor(laurent, mode)
        # A single folded term wins unless factoring clears a denominator.
        if len(folded) == 1 and (fac is None or _denominator(fac[0]) >= _denominator(folded[0][0])):
            coeff, kind, k = folded[0]
            factors = pre + ([style.func(kind, mode, k)] if kind else [])
            pieces.append(_product(coeff, factors, tau_den, style))
            continue
        if fac is not None:
            r, (c, s, u, v) = fac
            C = style.func("C", mode, 1)
            S = style.func("S", mode, 1)
            factors = list(pre)
            if c:
                factors.append(style.pow(C, c))
            if s:
                factors.append(style.pow(S, s))
            if u:
                factors.append(style.pow(f"({C} - 1)", u))
            if v:
                factors.append(style.pow(f"({C} + 1)", v))
            pieces.append(_product(r, factors, tau_den, style))
            continue
        inner = []
        for coeff, kind, k in folded:
            inner.append(_product(coeff, [style.func(kind, mode, k)] if kind else [], 0, style))
        body = _join(inner)
        if pre or tau_den:
            _, head = _product(GaussianRational(1), pre, 0, style)
            body = f"{head}{style.mul}({body})" if pre else f"({body})"
            if tau_den:
                if style.latex:
                    body += style.mul + style.pow("\\tau", -tau_den)
                else:
                    body += "/" + style.pow("tau", tau_den)
            pieces.append((False, body))
        else:
            pieces.extend(inner)
    return pieces


def _join(pieces) -> str:
    out = []
    for i, (negative, body) in enumerate(pieces):
        if i == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out) if out else "0"


def _x_factors(idx, style: _Style) -> list[str]:
    names = ("x_{1}", "x_{2}", "x_{3}") if style.latex else ("x1", "x2", "x3")
    return [style.pow(n, e) for n, e in zip(names, idx) if e]


def _render(e: SpaceExpr, style: _Style) -> str:
    pieces = []
    for idx, field in e.items():
        xs = _x_factors(idx, style)
        fp = _field_pieces(field, style)
        if not xs:
            pieces.extend(fp)
            continue
        xbody = style.mul.join(xs)
        if len(fp) == 1:
            negative, body = fp[0]
            pieces.append((negative, xbody if body == "1" else f"{body}{style.mul}{xbody}"))
        else:
            pieces.append((False, f"({_join(fp)}){style.mul}{xbody}"))
    return _join(pieces)


def _as_expr(e) -> SpaceExpr:
    return SpaceExpr.scalar(e) if isinstance(e, ScalarField) else e


def print_text(e) -> str:
    """ASCII rendering; parseable by :func:`nhtwist.syntax.parse_expr`."""
    return _render(_as_expr(e), TEXT)


def print_latex(e) -> str:
    return _render(_as_expr(e), LATEX)


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def field_to_json(f: ScalarField) -> list[dict]:
    return [
        {"m": m, "k": k, "p": p, "re": _q(c.re), "im": _q(c.im), "params": dict(q)}
        for (m, k, p, q), c in f.items()
    ]


def to_json_obj(e) -> dict:
    e = _as_expr(e)
    return {
        "terms": [{"x": list(idx), "coeff": field_to_json(f)} for idx, f in e.items()],
        "mode": e.mode,
    }


def print_json(e) -> str:
    return json.dumps(to_json_obj(e), sort_keys=True)


def from_json_obj(obj: dict) -> SpaceExpr:
    mode = obj["mode"]
    terms = {}
    for term in obj["terms"]:
        field = ScalarField(
            {
                (c["m"], c["k"], c["p"], tuple(sorted(c["params"].items()))): GaussianRational(
                    Fraction(c["re"]), Fraction(c["im"])
                )
                for c in term["coeff"]
            },
            mode,
        )
        terms[tuple(term["x"])] = field
    return SpaceExpr(terms, mode)
