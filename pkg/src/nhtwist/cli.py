"""Command-line entry point: ``nhtwist <command> [options]``.

Exit status is 0 on success, 1 when a check or ``--expect`` assertion fails and
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .coefficients import PARAMETERS, I, ModeError, ScalarField
from .contraction import ContractionError, contract_table, contract_twist
from .generators import AlgebraKind, GeneratorError, normalize_generator, verify_algebra
from .limits import LimitResult, tau_limit
from .presets import PRESETS
from .printing import print_latex, print_text, to_json_obj
from .spacetime import SpaceExpr
from .symmetry import check_h_is_dfdt, classify_unbroken
from .syntax import ElaborationError, ParseError, parse_expr
from .twist import (
    COORDINATES,
    SeriesDefect,
    TwistBivector,
    TwistError,
    classify_nc_type,
    kappa_factor,
    star_commutator,
    star_product,
    to_kappa,
    twist_from_text,
)

KINDS = {"nh-plus": "nh_plus", "nh-minus": "nh_minus", "galilei": "galilei"}
FORMATS = ("text", "latex", "json")

INPUT_ERRORS = (ParseError, ElaborationError, TwistError, GeneratorError, ModeError, SeriesDefect, ValueError)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    kind: AlgebraKind
    twist: str = "none"
    generators: tuple[str, ...] | None = None
    fmt: str = "text"
    substitutions: dict[str, Fraction] = field(default_factory=dict)
    max_order: int | None = None
    expect: str | None = None

    def __post_init__(self):
        for name, value in self.substitutions.items():
            if name not in PARAMETERS:
                raise UsageError(f"unknown parameter {name!r}")
            if not isinstance(value, Fraction):
                raise UsageError(f"substitution for {name} must be an exact rational")


@dataclass
class Outcome:
    text: str
    ok: bool = True


# -- helpers -----------------------------------------------------------------------


def parse_substitutions(items) -> dict[str, Fraction]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"substitution {item!r} is not of the form name=rational")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"{value!r} is not an exact rational") from exc
    return out


def parse_generators(items, kind: AlgebraKind) -> tuple[str, ...] | None:
    if not items:
        return None
    names: list[str] = []
    for item in items:
        for name in item.replace(",", " ").split():
            try:
                canonical, _ = normalize_generator(name)
            except GeneratorError as exc:
                raise UsageError(str(exc)) from exc
            if canonical not in kind.generators:
                raise UsageError(f"{name} is not a generator of {kind.label}")
            if canonical not in names:
                names.append(canonical)
    return tuple(names)


def _kind_label(kind: AlgebraKind) -> str:
    return kind.label if kind.with_acceleration else f"{kind.label}/no-acceleration"


def _as_expr(value) -> SpaceExpr:
    return SpaceExpr.scalar(value) if isinstance(value, ScalarField) else value


def _slot(i: int, j: int) -> str:
    return f"{COORDINATES[i]},{COORDINATES[j]}"


class Session:
    """One twist in one kind; presets are reported with ``kappa_a``."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.kind = config.kind
        F = twist_from_text(config.twist, config.kind)
        self.factor = kappa_factor(F.preset, F.kind) if F.preset is not None else None
        alphas = {k: v for k, v in config.substitutions.items() if k.startswith("alpha")}
        self.F: TwistBivector = F.substitute(alphas) if alphas else F

    def note(self) -> str | None:
        if self.factor is None:
            return None
        a = self.F.preset
        return f"# kappa{a} = {self.factor}*alpha{a}"

    def finish(self, value):
        if self.factor is not None:
            value = to_kappa(value, self.F.preset, self.kind)
        if self.config.substitutions:
            value = value.substitute(dict(self.config.substitutions))
        return value

    def render(self, value) -> str:
        value = self.finish(value)
        return print_latex(value) if self.config.fmt == "latex" else print_text(value)

    def matches(self, value, text: str) -> bool:
        """Parse-equality of ``text`` with the finished ``value``."""
        value = _as_expr(self.finish(value))
        return parse_expr(text, value.mode) == value


def covariance_data(session: Session) -> dict:
    """The covariance report in JSON-schema form (values as text)."""
    F = session.F
    report = classify_unbroken(F, session.config.generators)
    residuals = {
        h: {_slot(i, j): session.render(v) for (i, j), v in sorted(slots.items()) if i < j and v}
        for h, slots in report.residuals.items()
    }
    limit = tau_limit(report.f)
    return {
        "twist": F.name,
        "kind": _kind_label(session.kind),
        "commutator_x1x2": session.render(report.f * I),
        "residuals": residuals,
        "unbroken": report.unbroken,
        "h_of_t": session.render(report.h_of_t),
        "nc_type": classify_nc_type(limit.value) if limit.converges else "divergent",
        "closed": report.is_closed(),
        "_h": report.h_of_t,
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _public(data: dict) -> dict:
    return {k: v for k, v in data.items() if not k.startswith("_")}


def _header(session: Session) -> list[str]:
    lines = [f"twist: {session.F.name}", f"kind: {_kind_label(session.kind)}"]
    note = session.note()
    return lines + ([note] if note else [])


# -- commands ----------------------------------------------------------------------


def cmd_verify_algebra(config: RunConfig) -> Outcome:
    report = verify_algebra(config.kind)
    verdict = "all-match" if report.all_match else "mismatch"
    ok = report.all_match
    if config.expect is not None:
        ok = ok and config.expect.strip() == verdict
    if config.fmt == "json":
        rows = [
            {
                "left": c.left,
                "right": c.right,
                "expected": {g: print_text(v) for g, v in sorted(c.expected.items())},
                "match": c.ok,
            }
            for c in report.checks
        ]
        return Outcome(_dump({"kind": _kind_label(config.kind), "brackets": rows, "result": verdict}), ok)
    lines = [f"kind: {_kind_label(config.kind)}"]
    for c in report.checks:
        rhs = " + ".join(f"({print_text(v)})*{g}" for g, v in sorted(c.expected.items())) or "0"
        lines.append(f"[{c.left}, {c.right}] = {rhs}  {'ok' if c.ok else 'MISMATCH'}")
    lines.append(f"{verdict} ({len(report.checks) - len(report.mismatches())}/{len(report.checks)} brackets)")
    return Outcome("\n".join(lines), ok)


def cmd_star(config: RunConfig, left: str, right: str, commutator: bool = False) -> Outcome:
    session = Session(config)
    mode = config.kind.mode
    f, g = parse_expr(left, mode), parse_expr(right, mode)
    op = star_commutator if commutator else star_product
    value = op(session.F, f, g, config.max_order)
    ok = True if config.expect is None else session.matches(value, config.expect)
    if config.fmt == "json":
        finished = session.finish(value)
        payload = {
            "twist": session.F.name,
            "kind": _kind_label(session.kind),
            "operation": "commutator" if commutator else "product",
            "left": left,
            "right": right,
            "result": print_text(finished),
            "exact": to_json_obj(finished),
        }
        if session.factor is not None:
            payload["kappa_factor"] = str(session.factor)
        return Outcome(_dump(payload), ok)
    lines = [session.render(value)]
    note = session.note()
    return Outcome("\n".join(lines + ([note] if note else [])), ok)


def cmd_covariance(config: RunConfig) -> Outcome:
    session = Session(config)
    data = covariance_data(session)
    ok = data["closed"] or config.generators is not None
    if config.expect is not None:
        ok = ok and session.matches(data["_h"], config.expect)
    if config.fmt == "json":
        return Outcome(_dump(_public(data)), ok)
    lines = _header(session)
    lines.append(f"[x1, x2] = {data['commutator_x1x2']}")
    for h, slots in data["residuals"].items():
        if not slots:
            lines.append(f"{h}: 0")
        for slot, text in slots.items():
            lines.append(f"{h}: [{slot.replace(',', ', ')}] -> {text}")
    lines.append("unbroken: " + (" ".join(data["unbroken"]) or "(none)"))
    lines.append(f"h(t) = {data['h_of_t']}")
    return Outcome("\n".join(lines), ok)


def _limit_payload(session: Session, r: LimitResult) -> dict:
    if r.converges:
        return {"value": session.render(r.value)}
    return {"divergence": {"power": r.power, "coefficient": session.render(r.coefficient)}}


def cmd_contract(config: RunConfig) -> Outcome:
    session = Session(config)
    F, kind = session.F, session.kind
    lw, lg = contract_twist(F)
    ok = True
    if F.preset is not None and kind.family != "galilei" and not config.substitutions:
        try:
            contract_table(F.preset, kind)
        except ContractionError:
            ok = False
    results = {"w": lw, "g": lg}
    if config.expect is not None:
        parts = config.expect.split(";")
        ok = ok and len(parts) <= 2 and all(
            r.converges and session.matches(r.value, text) for r, text in zip((lw, lg), parts)
        )
    if config.fmt == "json":
        payload = {"twist": F.name, "kind": _kind_label(kind)}
        payload.update({k: _limit_payload(session, r) for k, r in results.items()})
        return Outcome(_dump(payload), ok)
    lines = _header(session)
    for key, r in results.items():
        if r.converges:
            lines.append(f"{key} = {session.render(r.value)}")
        else:
            lines.append(f"{key} diverges like tau^{r.power} with coefficient {session.render(r.coefficient)}")
    return Outcome("\n".join(lines), ok)


def cmd_classify(config: RunConfig) -> Outcome:
    session = Session(config)
    data = covariance_data(session)
    ok = True if config.expect is None else config.expect.strip() == data["nc_type"]
    if config.fmt == "json":
        return Outcome(_dump(_public(data)), ok)
    lines = _header(session)
    lines.append("unbroken: " + (" ".join(data["unbroken"]) or "(none)"))
    lines.append(f"closed: {'yes' if data['closed'] else 'no'}")
    lines.append(f"nc_type: {data['nc_type']}")
    return Outcome("\n".join(lines), ok)


def _reproduce_one(job) -> dict:
    family, a = job
    kind = AlgebraKind(family)
    session = Session(RunConfig("reproduce", kind, f"alpha{a}"))
    data = covariance_data(session)
    checks = {"closed": data["closed"], "h_is_dfdt": check_h_is_dfdt(session.F).holds}
    if family != "galilei":
        try:
            w, g = contract_table(a, kind)
            data["contraction"] = {"w": print_text(w), "g": print_text(g)}
            checks["contraction"] = True
        except ContractionError:
            checks["contraction"] = False
    data["kappa_factor"] = str(session.factor)
    data["preset"] = a
    data["checks"] = checks
    return _public(data)


def cmd_reproduce(config: RunConfig, jobs: int = 1) -> Outcome:
    """Every preset in every kind; independent jobs, so they may run in parallel."""
    work = [(fam, a) for fam in ("nh_plus", "nh_minus", "galilei") for a in PRESETS]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_reproduce_one, work))
    else:
        rows = [_reproduce_one(job) for job in work]
    ok = all(all(r["checks"].values()) for r in rows)
    if config.fmt == "json":
        return Outcome(_dump(rows), ok)
    lines = []
    for r in rows:
        flags = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in sorted(r["checks"].items()))
        lines.append(f"{r['kind']} {r['twist']} (kappa{r['preset']} = {r['kappa_factor']}*alpha{r['preset']}): [x1, x2] = {r['commutator_x1x2']}")
        lines.append(f"  h(t) = {r['h_of_t']}; nc_type = {r['nc_type']}; unbroken = {' '.join(r['unbroken'])}")
        if "contraction" in r:
            lines.append(f"  w = {r['contraction']['w']}; g = {r['contraction']['g']}")
        lines.append(f"  {flags}")
    return Outcome("\n".join(lines), ok)


# -- argument handling -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--kind", choices=sorted(KINDS), default="nh-plus")
    common.add_argument("--no-acceleration", action="store_true", help="drop the F generators")
    common.add_argument("--twist", default="none", help="none, alpha1..alpha6 or e.g. 'alpha3: K1^K2'")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    common.add_argument("--subst", action="append", metavar="NAME=RATIONAL", help="repeatable")
    common.add_argument("--max-order", type=int, help="order guard of the exponential series")
    common.add_argument("--expect", help="golden value; mismatch exits with status 1")
    common.add_argument("--generator", action="append", help="restrict to these generators")
    common.add_argument("--output", help="write the report to this file")

    parser = _Parser(prog="nhtwist", description="Exact twisted Newton-Hooke and Galilei computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("verify-algebra", parents=[common], help="check the bracket table")
    star = sub.add_parser("star", parents=[common], help="star product of two expressions")
    star.add_argument("--commutator", action="store_true")
    star.add_argument("left")
    star.add_argument("right")
    sub.add_parser("covariance", parents=[common], help="generator residuals on the deformed space")
    sub.add_parser("contract", parents=[common], help="tau -> infinity limit")
    sub.add_parser("classify", parents=[common], help="unbroken generators and commutator type")
    rep = sub.add_parser("reproduce", parents=[common], help="all presets in all kinds")
    rep.add_argument("--jobs", type=int, default=1)
    return parser


def _config(ns) -> RunConfig:
    kind = AlgebraKind(KINDS[ns.kind], not ns.no_acceleration)
    if ns.max_order is not None and ns.max_order < 0:
        raise UsageError("--max-order must be non-negative")
    return RunConfig(
        command=ns.command,
        kind=kind,
        twist=ns.twist,
        generators=parse_generators(ns.generator, kind),
        fmt=ns.fmt,
        substitutions=parse_substitutions(ns.subst),
        max_order=ns.max_order,
        expect=ns.expect,
    )


def run(argv=None) -> tuple[int, str, str]:
    """Run a command and return ``(status, stdout text, stderr text)``."""
    try:
        ns = build_parser().parse_args(argv)
        config = _config(ns)
        if ns.command == "verify-algebra":
            outcome = cmd_verify_algebra(config)
        elif ns.command == "star":
            outcome = cmd_star(config, ns.left, ns.right, ns.commutator)
        elif ns.command == "covariance":
            outcome = cmd_covariance(config)
        elif ns.command == "contract":
            outcome = cmd_contract(config)
        elif ns.command == "classify":
            outcome = cmd_classify(config)
        else:
            if ns.jobs < 1:
                raise UsageError("--jobs must be positive")
            outcome = cmd_reproduce(config, ns.jobs)
    except UsageError as exc:
        return 2, "", f"nhtwist: error: {exc}\n"
    except INPUT_ERRORS as exc:
        return 2, "", f"nhtwist: {type(exc).__name__}: {exc}\n"
    text = outcome.text + "\n"
    status = 0 if outcome.ok else 1
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        text = ""
    err = "" if outcome.ok else "nhtwist: expectation failed\n"
    return status, text, err


def main(argv=None) -> int:
    status, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
