"""Frobenius traces for the fixed residual representation.

Two sources are supported: naive point counting on a Weierstrass model, and a
CSV trace table (``ell,a_ell`` with a ``# p=<p>`` header) for forms that do not
come from a curve in hand, or for primes past the point-counting bound.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numba
import numpy as np

from .arith import is_prime
from .errors import (
    BadReduction,
    DuplicatePrime,
    InvalidParameter,
    MissingTrace,
    NonPrimeKey,
    ResourceLimit,
    TraceTableError,
    ValueOutOfRange,
)

POINT_COUNT_BOUND = 10**6


@dataclass(frozen=True)
class CurveSpec:
    """Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int | None = None

    def __post_init__(self):
        if self.discriminant == 0:
            raise InvalidParameter("singular Weierstrass model (discriminant 0)")
        if self.conductor is not None and self.conductor < 1:
            raise InvalidParameter("conductor must be positive")

    @classmethod
    def parse(cls, text: str, conductor: int | None = None) -> "CurveSpec":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 5:
            raise InvalidParameter(f"expected a1,a2,a3,a4,a6, got {text!r}")
        try:
            coeffs = [int(s) for s in parts]
        except ValueError as exc:
            raise InvalidParameter(f"non-integer curve coefficient in {text!r}") from exc
        return cls(*coeffs, conductor=conductor)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.coefficients)


@dataclass(frozen=True)
class TraceTable:
    p: int
    entries: Mapping[int, int] = field(default_factory=dict)
    provenance: str = ""

    def __post_init__(self):
        for ell, a in self.entries.items():
            if not is_prime(ell):
                raise NonPrimeKey(ell)
            if not 0 <= a < self.p:
                raise ValueOutOfRange(ell, a)

    @classmethod
    def from_traces(cls, p: int, traces: Mapping[int, int], provenance: str = "") -> "TraceTable":
        """Build a table from integer traces, reducing them mod p."""
        return cls(p, {ell: a % p for ell, a in traces.items()}, provenance)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, ell: int) -> bool:
        return ell in self.entries

    def get(self, ell: int) -> int:
        try:
            return self.entries[ell]
        except KeyError:
            raise MissingTrace(ell, "not in trace table") from None


@dataclass(frozen=True)
class FrobClass:
    ell: int
    trace: int
    det: int


# --- point counting ---------------------------------------------------------


@numba.njit(cache=True, nogil=True)
def _count_cubic_kernel(ell, f0, d1, d2, d3):
    # Returns 1 + sum_x (1 + chi(g(x))) for a cubic g given by forward differences.
    sq = np.zeros(ell, dtype=np.uint8)
    s = 0
    step = 1
    for _ in range((ell + 1) // 2):
        sq[s] = 1
        s += step
        if s >= ell:
            s -= ell
        step += 2
        if step >= ell:
            step -= ell
    n = 1
    f = f0
    for _ in range(ell):
        if f == 0:
            n += 1
        elif sq[f]:
            n += 2
        f += d1
        if f >= ell:
            f -= ell
        d1 += d2
        if d1 >= ell:
            d1 -= ell
        d2 += d3
        if d2 >= ell:
            d2 -= ell
    return n


def _count_small_char(curve: CurveSpec, ell: int) -> int:
    a1, a2, a3, a4, a6 = curve.coefficients
    n = 1
    for x in range(ell):
        rhs = x**3 + a2 * x * x + a4 * x + a6
        for y in range(ell):
            if (y * y + a1 * x * y + a3 * y - rhs) % ell == 0:
                n += 1
    return n


def _count_odd_char(curve: CurveSpec, ell: int) -> int:
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, valid for ell > 3 (ell odd suffices).
    b2, b4, b6, _ = curve.b_invariants

    def g(x: int) -> int:
        return (4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % ell

    g0, g1, g2, g3 = g(0), g(1), g(2), g(3)
    d1 = (g1 - g0) % ell
    d2 = (g2 - 2 * g1 + g0) % ell
    d3 = (g3 - 3 * g2 + 3 * g1 - g0) % ell
    return int(_count_cubic_kernel(ell, g0, d1, d2, d3))


_trace_cache: dict[tuple[CurveSpec, int], int] = {}
_cache_lock = threading.Lock()


def count_points(curve: CurveSpec, ell: int, bound: int = POINT_COUNT_BOUND) -> int:
    """#E(F_ell), point at infinity included."""
    if not is_prime(ell):
        raise InvalidParameter(f"{ell} is not prime")
    if ell > bound:
        raise ResourceLimit(f"ell={ell} exceeds point-counting bound {bound}")
    if curve.discriminant % ell == 0:
        raise BadReduction(ell)
    key = (curve, ell)
    cached = _trace_cache.get(key)
    if cached is not None:
        return ell + 1 - cached
    n = _count_small_char(curve, ell) if ell <= 3 else _count_odd_char(curve, ell)
    with _cache_lock:
        _trace_cache[key] = ell + 1 - n
    return n


def trace_of_frobenius(curve: CurveSpec, ell: int, bound: int = POINT_COUNT_BOUND) -> int:
    return ell + 1 - count_points(curve, ell, bound)


def prefetch_traces(
    curve: CurveSpec, primes: Iterable[int], workers: int = 1, bound: int = POINT_COUNT_BOUND
) -> None:
    """Warm the trace cache for good primes within the bound, optionally on threads."""
    todo = [
        ell
        for ell in primes
        if ell <= bound and curve.discriminant % ell and (curve, ell) not in _trace_cache
    ]
    if workers <= 1:
        for ell in todo:
            count_points(curve, ell, bound)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(lambda ell: count_points(curve, ell, bound), todo))


# --- trace tables -----------------------------------------------------------


def _parse_header(line: str) -> int | None:
    body = line.lstrip("#").strip().replace(" ", "")
    if body.startswith("p="):
        try:
            return int(body[2:])
        except ValueError:
            return None
    return None


def load_trace_table(path: str | Path, p: int | None = None) -> TraceTable:
    """Parse a ``# p=<p>`` headed CSV of ``ell,a_ell`` rows.

    Values may be residues in [0, p-1] or actual integer traces within the
    Hasse bound; both are reduced mod p.
    """
    path = Path(path)
    header_p = None
    notes = []
    rows: list[tuple[int, int, int]] = []
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                found = _parse_header(line)
                if found is not None:
                    if header_p is not None and found != header_p:
                        raise TraceTableError("conflicting p headers", lineno)
                    header_p = found
                else:
                    notes.append(line.lstrip("#").strip())
                continue
            parts = [s.strip() for s in line.split(",")]
            if parts[:2] == ["ell", "a_ell"]:
                continue
            if len(parts) != 2:
                raise TraceTableError(f"expected 'ell,a_ell', got {line!r}", lineno)
            try:
                ell, a = int(parts[0]), int(parts[1])
            except ValueError:
                raise TraceTableError(f"non-integer field in {line!r}", lineno) from None
            rows.append((lineno, ell, a))

    if p is not None and header_p is not None and p != header_p:
        raise TraceTableError(f"table header says p={header_p}, caller asked for p={p}")
    p = p if p is not None else header_p
    if p is None:
        raise TraceTableError("residue characteristic unknown: add a '# p=<p>' header")
    if p < 2 or not is_prime(p):
        raise TraceTableError(f"p={p} is not prime")

    entries: dict[int, int] = {}
    for lineno, ell, a in rows:
        if ell < 2 or not is_prime(ell):
            raise NonPrimeKey(ell, lineno)
        if ell in entries:
            raise DuplicatePrime(ell, lineno)
        if not 0 <= a < p and a * a > 4 * ell:
            raise ValueOutOfRange(ell, a, lineno)
        entries[ell] = a % p
    provenance = "; ".join(notes) or str(path)
    return TraceTable(p, entries, provenance)


def write_trace_table(path: str | Path, p: int, traces: Mapping[int, int], provenance: str = "") -> None:
    lines = [f"# p={p}"]
    if provenance:
        lines.append(f"# {provenance}")
    lines.extend(f"{ell},{traces[ell]}" for ell in sorted(traces))
    Path(path).write_text("\n".join(lines) + "\n")


def hasse_bound_holds(ell: int, a: int) -> bool:
    return a * a <= 4 * ell


def frobenius_data(spec, ell: int) -> FrobClass:
    """Trace and determinant of the residual Frobenius at an unramified ell != p."""
    if ell < 2 or not is_prime(ell):
        raise InvalidParameter(f"{ell} is not prime")
    if spec.conductor % ell == 0:
        raise InvalidParameter(f"{ell} divides the Serre conductor {spec.conductor}")
    if ell == spec.p:
        raise InvalidParameter(f"ell equals p={spec.p}")
    return FrobClass(ell, spec.a_ell_mod_p(ell), ell % spec.p)

