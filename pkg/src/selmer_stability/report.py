"""One-shot report for a residual representation: sieve, census, levels, certificates."""

from __future__ import annotations

import csv
import io
import json

from .census import census_levels, census_ratios, check_hypothesis, count_squarefree_smooth, omega_primes
from .config import RunConfig
from .errors import ConfigError, SelmerToolError
from .gl2_density import DEFAULT_MAX_P, omega_density_bruteforce, omega_density_closed_form
from .levels import enumerate_admissible
from .stability import stability_certificate


class ReportError(SelmerToolError):
    def __init__(self, stage: str, cause: SelmerToolError):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SelmerToolError as exc:
        raise ReportError(name, exc) from exc


def _density_section(p: int) -> dict:
    closed = omega_density_closed_form(p)
    if p > DEFAULT_MAX_P:
        return {"p": p, "brute_force": False, "closed_form": _frac(closed)}
    rep = omega_density_bruteforce(p)
    return {
        "p": p,
        "brute_force": True,
        "group_order": rep.group_order,
        "matching_count": rep.matching_count,
        "fraction": _frac(rep.exact_fraction),
        "closed_form": _frac(rep.closed_form),
        "match": rep.match,
    }


def run_report(config: RunConfig) -> dict:
    """Assemble the full report document; any stage error aborts with the stage named."""
    if config.max_level is None:
        raise ConfigError("report needs max_level")
    spec = config.spec
    X = config.max_level
    Y = X // spec.conductor
    delta = omega_density_closed_form(spec.p)

    _stage("hypothesis", check_hypothesis, spec)

    density = _stage("density", _density_section, spec.p)
    omega = _stage("omega", omega_primes, spec, max(Y, 1), config.workers)
    m_omega = count_squarefree_smooth(omega, Y) if Y >= 1 else 0

    census = {"Y": Y, "M_omega": m_omega, "delta": _frac(delta)}
    usable = [c for c in config.checkpoints if 2 <= c <= Y]
    if len(usable) >= 3:
        curve = _stage("census", census_ratios, omega, delta, usable, config.band)
        census["curve"] = [
            {"Y": pt.Y, "M_omega": pt.count, "ratio": f"{pt.ratio:.6f}"} for pt in curve.points
        ]
        census["spread"] = f"{curve.spread:.6f}"
        census["stable"] = curve.stable
    else:
        census["curve"] = []
        census["note"] = "fewer than three checkpoints in [2, X // N_rho]; ratio curve skipped"

    levels = _stage("levels", enumerate_admissible, spec, X, config.workers)
    members = _stage("census", census_levels, spec, X, workers=config.workers) if Y >= 1 else []
    certificates = [_stage("certify", stability_certificate, spec, N) for N in members]
    admissible = set(levels.admissible)

    return {
        "config": config.describe(),
        "density": density,
        "omega": {"bound": Y, "count": len(omega), "primes": omega},
        "census": census,
        "levels": {
            "X": X,
            "n": levels.n,
            "admissible": levels.admissible,
            "unknown": levels.unknown,
        },
        "nf_lower_bound": m_omega,
        "certificates": [
            {"level": c.level, "certified": c.certified, "reasons": list(c.reasons)} for c in certificates
        ],
        "consistency": {
            "census_levels_admissible": all(N in admissible for N in members),
            "census_levels_certified": all(c.certified for c in certificates),
            "lower_bound_within_levels": m_omega <= levels.n + len(levels.unknown),
        },
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else key, sub, rows)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, sub in enumerate(value):
            _flatten(f"{prefix}[{i}]", sub, rows)
    elif isinstance(value, list):
        rows.append((prefix, " ".join(str(v) for v in value)))
    elif isinstance(value, bool):
        rows.append((prefix, str(value).lower()))
    else:
        rows.append((prefix, "" if value is None else str(value)))


def render_csv(doc: dict) -> str:
    rows: list = []
    _flatten("", doc, rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerows(rows)
    return buf.getvalue()


def render(doc: dict, fmt: str) -> str:
    return render_json(doc) if fmt == "json" else render_csv(doc)
