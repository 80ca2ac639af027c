"""Flat ``key = value`` configuration files for specs and report runs.

Recognised keys::

    p            residue characteristic (prime >= 5)
    conductor    Serre conductor N_rho (alias: N_rho_bar)
    curve        a1,a2,a3,a4,a6 of a Weierstrass model supplying a_ell
    trace_table  path to an ``ell,a_ell`` CSV (relative to the config file)
    surjective   true/false; asserted, never verified
    max_level    X, the level bound for report runs
    checkpoints  comma-separated census checkpoints Y (1e4 style allowed)
    band         census stability band (default 2)
    format       csv | json
    output       output path
    seed         integer seed for randomized suites
    workers      threads used for point counting

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .errors import ConfigError, SelmerToolError
from .frobenius import CurveSpec, load_trace_table
from .omega import ResidualRepSpec

KNOWN_KEYS = {
    "p", "conductor", "N_rho_bar", "curve", "trace_table", "surjective", "max_level",
    "checkpoints", "band", "format", "output", "seed", "workers",
}


def parse_int(text: str, key: str = "value") -> int:
    """Integers, also written as 1e4 or 10_000, so long as they are exact."""
    try:
        value = Decimal(text.replace("_", "").strip())
    except InvalidOperation:
        raise ConfigError(f"{key}: {text!r} is not a number") from None
    if value != value.to_integral_value():
        raise ConfigError(f"{key}: {text!r} is not an integer")
    return int(value)


def _parse_float(text: str, key: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key}: {text!r} is not a number") from None


def parse_bool(text: str, key: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected true/false, got {text!r}")


def read_kv(path: str | Path) -> dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value
    return values


@dataclass(frozen=True)
class RunConfig:
    p: int
    conductor: int
    curve: str | None = None
    trace_table: Path | None = None
    surjective: bool = False
    max_level: int | None = None
    checkpoints: tuple[int, ...] = ()
    band: float = 2.0
    fmt: str = "json"
    output: Path | None = None
    seed: int = 0
    workers: int = 1
    _spec: ResidualRepSpec | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if (self.curve is None) == (self.trace_table is None):
            raise ConfigError("give exactly one of curve / trace_table")
        if self.max_level is not None and self.max_level < 1:
            raise ConfigError("max_level must be positive")
        if any(c < 1 for c in self.checkpoints):
            raise ConfigError("checkpoints must be positive")
        if any(b <= a for a, b in zip(self.checkpoints, self.checkpoints[1:])):
            raise ConfigError("checkpoints must be strictly increasing")
        if self.band <= 1:
            raise ConfigError("band must exceed 1")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        try:
            object.__setattr__(self, "_spec", self._build_spec())
        except ConfigError:
            raise
        except SelmerToolError as exc:
            raise ConfigError(str(exc)) from exc

    def _build_spec(self) -> ResidualRepSpec:
        if self.curve is not None:
            source = CurveSpec.parse(self.curve, conductor=self.conductor)
        else:
            source = load_trace_table(self.trace_table, self.p)
        return ResidualRepSpec(self.p, self.conductor, source, self.surjective)

    @property
    def spec(self) -> ResidualRepSpec:
        return self._spec

    def describe(self) -> dict:
        return {
            "p": self.p,
            "conductor": self.conductor,
            "source": f"curve {self.curve}" if self.curve else f"trace_table {self.trace_table.name}",
            "surjective": self.surjective,
            "max_level": self.max_level,
            "checkpoints": list(self.checkpoints),
            "band": self.band,
            "seed": self.seed,
        }


def config_from_mapping(values: dict[str, str], base_dir: Path | None = None) -> RunConfig:
    if "p" not in values:
        raise ConfigError("missing key: p")
    conductor = values.get("conductor", values.get("N_rho_bar"))
    if conductor is None:
        raise ConfigError("missing key: conductor")
    table = values.get("trace_table")
    table_path = None
    if table is not None:
        table_path = Path(table)
        if base_dir is not None and not table_path.is_absolute():
            table_path = base_dir / table_path
    checkpoints = values.get("checkpoints", "")
    return RunConfig(
        p=parse_int(values["p"], "p"),
        conductor=parse_int(conductor, "conductor"),
        curve=values.get("curve"),
        trace_table=table_path,
        surjective=parse_bool(values.get("surjective", "false"), "surjective"),
        max_level=parse_int(values["max_level"], "max_level") if "max_level" in values else None,
        checkpoints=tuple(parse_int(c, "checkpoints") for c in checkpoints.split(",") if c.strip()),
        band=_parse_float(values.get("band", "2"), "band"),
        fmt=values.get("format", "json"),
        output=Path(values["output"]) if "output" in values else None,
        seed=parse_int(values.get("seed", "0"), "seed"),
        workers=parse_int(values.get("workers", "1"), "workers"),
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    return config_from_mapping(read_kv(path), path.parent)
