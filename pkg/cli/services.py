"""
Dispatch for the `threefold` command: turns parsed options into module calls
and a RunReport.
"""
import logging
import time
from typing import Any, Callable, Dict, Optional, Sequence

from django.conf import settings
from django.test.utils import override_settings

from cartier.manin import parse_chart
from cartier.services import discriminant_cartier
from conicbundle.exceptions import UsageError
from conicbundle.limits import DEFAULTS
from cover.services import count_curve_and_cover, is_etale
from cubic.catalog import DEFAULT_LINES, resolve_cubic
from cubic.frames import discriminant_is_smooth, discriminant_quintic, good_line_frame
from cubic.lines import LineInP4
from cubic.services import classify_line, enumerate_lines, is_hermitian, is_smooth_cubic
from field.galois import Field
from field.literals import parse_field_literal
from quadrics.services import build_quadratic_space, generator_parity
from zeta.services import p_rank_from_l, verify_ij_identity, zeta_functions

from .reporting import RunReport

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    "smooth",
    "hermitian",
    "lines",
    "classify-line",
    "discriminant",
    "cover-count",
    "zeta",
    "prym",
    "verify-identity",
    "cartier",
    "quadric-parity",
)

# The limit a --budget flag overrides for each subcommand; hermitian only
# reads coefficients and takes no budget.
BUDGET_LIMITS = {
    "smooth": "GROEBNER_PAIR_CAP",
    "classify-line": "GROEBNER_PAIR_CAP",
    "discriminant": "GROEBNER_PAIR_CAP",
    "lines": "LINES_MAX_CANDIDATES",
    "cover-count": "COVER_MAX_FIELD",
    "zeta": "COVER_MAX_FIELD",
    "prym": "COVER_MAX_FIELD",
    "cartier": "GROEBNER_PAIR_CAP",
    "verify-identity": "THREEFOLD_MAX_POINTS",
    "quadric-parity": "QUADRIC_MAX_DIMENSION",
}

DEFAULT_M_MAX = {"cover-count": 6, "zeta": 6, "prym": 11, "verify-identity": 4}
DEFAULT_IDENTITY_M_MAX = 3


# ---------- option helpers ----------

def _cubic(field: Field, options: Dict[str, Any]):
    return resolve_cubic(options.get("cubic") or "good-line-example", field)


def _line(field: Field, options: Dict[str, Any]) -> LineInP4:
    text = options.get("line") or DEFAULT_LINES.get((options.get("cubic") or "good-line-example").strip())
    if not text:
        raise UsageError("this subcommand needs --line", {"cubic": options.get("cubic")})
    return LineInP4.parse(text, field)


def _frame(field: Field, options: Dict[str, Any]):
    return good_line_frame(_cubic(field, options), _line(field, options))


def _positive(options: Dict[str, Any], key: str, default: int) -> int:
    value = options.get(key)
    if value is None:
        return default
    if value < 1:
        flag = "--" + key.replace("_", "-")
        raise UsageError(f"{flag} must be positive", {key: value})
    return value


def _m_max(command: str, options: Dict[str, Any]) -> int:
    return _positive(options, "m_max", DEFAULT_M_MAX[command])


# ---------- subcommands ----------

def _smooth(field, options):
    return {"smooth": is_smooth_cubic(_cubic(field, options), options.get("threads"))}


def _hermitian(field, options):
    return {"hermitian": is_hermitian(_cubic(field, options))}


def _lines(field, options):
    lines = enumerate_lines(_cubic(field, options), field, options.get("threads"))
    return {"count": len(lines), "lines": [str(line) for line in lines]}


def _classify(field, options):
    return classify_line(_cubic(field, options), _line(field, options), options.get("threads")).as_dict()


def _discriminant(field, options):
    fr = _frame(field, options)
    H = discriminant_quintic(fr)
    threads = options.get("threads")
    return {
        "H": H.format(["y0", "y1", "y2"]),
        "degree": H.degree,
        "smooth": discriminant_is_smooth(fr, threads),
        "etale": is_etale(fr, threads),
        "frame": fr.as_dict(),
    }


def _cover_count(field, options):
    fr = _frame(field, options)
    return count_curve_and_cover(fr, _m_max("cover-count", options), options.get("threads")).as_dict()


def _zeta(field, options):
    fr = _frame(field, options)
    report = zeta_functions(fr, _m_max("zeta", options), options.get("threads"), with_prym=False)
    return {**report.as_dict(), "p_rank": p_rank_from_l(report.curve, field.p)}


def _prym(field, options):
    X = _cubic(field, options)
    fr = good_line_frame(X, _line(field, options))
    threads = options.get("threads")
    report = zeta_functions(fr, _m_max("prym", options), threads)
    identity_m = _positive(options, "identity_m_max", DEFAULT_IDENTITY_M_MAX)
    identity = verify_ij_identity(X, fr, range(1, identity_m + 1), threads)
    return {**report.as_dict(), "identity": identity.as_list()}


def _verify_identity(field, options):
    X = _cubic(field, options)
    fr = good_line_frame(X, _line(field, options))
    m_max = _positive(options, "identity_m_max", _m_max("verify-identity", options))
    report = verify_ij_identity(X, fr, range(1, m_max + 1), options.get("threads"))
    return {"identity": report.as_list(), "pass": report.passed}


def _cartier(field, options):
    chart = parse_chart(options["chart"]) if options.get("chart") else None
    return discriminant_cartier(_frame(field, options), chart)


def _quadric_parity(field, options):
    Q = build_quadratic_space(field, options.get("quadric"), options.get("n"),
                              options.get("kind") or "hyperbolic")
    return generator_parity(Q, options.get("threads"))


HANDLERS: Dict[str, Callable[[Field, Dict[str, Any]], Dict[str, Any]]] = {
    "smooth": _smooth,
    "hermitian": _hermitian,
    "lines": _lines,
    "classify-line": _classify,
    "discriminant": _discriminant,
    "cover-count": _cover_count,
    "zeta": _zeta,
    "prym": _prym,
    "verify-identity": _verify_identity,
    "cartier": _cartier,
    "quadric-parity": _quadric_parity,
}

INPUT_KEYS = ("cubic", "line", "m_max", "identity_m_max", "quadric", "n", "kind", "chart")


def _limits_with(command: str, options: Dict[str, Any]) -> Dict[str, int]:
    limits = dict(DEFAULTS)
    limits.update(getattr(settings, "CONICBUNDLE_LIMITS", {}) or {})
    if options.get("budget") is not None:
        if command not in BUDGET_LIMITS:
            raise UsageError(f"--budget does not apply to {command}",
                             {"command": command, "budgeted": sorted(BUDGET_LIMITS)})
        limits[BUDGET_LIMITS[command]] = _positive(options, "budget", 1)
    if options.get("threads") is not None:
        limits["THREADS"] = int(options["threads"])
    return limits


def execute(command: str, options: Dict[str, Any]) -> RunReport:
    """Run one subcommand with already-parsed options."""
    if command not in HANDLERS:
        raise UsageError(f"unknown subcommand {command!r}", {"choices": list(SUBCOMMANDS)})
    field = parse_field_literal(options.get("field") or "GF(2)")
    inputs = {k: options[k] for k in INPUT_KEYS if options.get(k) is not None}
    started = time.perf_counter()
    with override_settings(CONICBUNDLE_LIMITS=_limits_with(command, options)):
        results = HANDLERS[command](field, options)
    elapsed = time.perf_counter() - started
    logger.info(f"{command} over {field} finished in {elapsed:.3f}s")
    return RunReport(command=command, field=field.literal(), inputs=inputs,
                     results=results, timing=elapsed)


def run_command(argv: Sequence[str], parser=None) -> RunReport:
    """Parse ``argv`` (subcommand first) with the command's parser and execute it."""
    if parser is None:
        from cli.management.commands.threefold import Command

        parser = Command().create_parser("manage.py", "threefold")
    options = vars(parser.parse_args(list(argv)))
    return execute(options.pop("subcommand"), options)


def format_report(report: RunReport, text: Optional[bool] = False) -> str:
    return report.to_text() if text else report.to_json()
