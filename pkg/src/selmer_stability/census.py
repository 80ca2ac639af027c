"""Squarefree Omega-smooth census M_Omega(Y) and the resulting level lower bound.

M_Omega(Y) counts squarefree M <= Y whose prime factors all lie in Omega,
with M = 1 included.  Each such M gives the level M * N_rho, so
N_f(X) >= M_Omega(X // N_rho).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import CapExceeded, HypothesisViolated, InvalidParameter, MissingTrace
from .omega import ResidualRepSpec, conductor_hypothesis_violations, sieve_omega

DEFAULT_BAND = 2.0


def _check_primes(primes: Sequence[int]) -> None:
    for a, b in zip(primes, primes[1:]):
        if a >= b:
            raise InvalidParameter("primes must be sorted ascending and distinct")
    if primes and primes[0] < 2:
        raise InvalidParameter("primes must be >= 2")


def _count(primes: Sequence[int], start: int, limit: int) -> int:
    total = 1
    end = bisect_right(primes, limit, start)
    for i in range(start, end):
        sub = limit // primes[i]
        if i + 1 >= end or primes[i + 1] > sub:
            # no larger prime fits after primes[i], nor after any later one
            return total + (end - i)
        total += _count(primes, i + 1, sub)
    return total


def count_squarefree_smooth(primes: Sequence[int], Y: int) -> int:
    """Number of squarefree integers in [1, Y] built only from ``primes``; 0 when Y = 0."""
    _check_primes(primes)
    if Y < 0:
        raise InvalidParameter("Y must be >= 0")
    return _count(primes, 0, Y) if Y else 0


def _walk(primes: Sequence[int], start: int, value: int, Y: int) -> Iterator[int]:
    yield value
    for i in range(start, len(primes)):
        nxt = value * primes[i]
        if nxt > Y:
            break
        yield from _walk(primes, i + 1, nxt, Y)


def enumerate_squarefree_smooth(primes: Sequence[int], Y: int, cap: int) -> list[int]:
    total = count_squarefree_smooth(primes, Y)
    if total > cap:
        raise CapExceeded(total, cap)
    return sorted(_walk(primes, 0, 1, Y)) if Y else []


@dataclass(frozen=True)
class CensusPoint:
    Y: int
    count: int
    ratio: float


@dataclass(frozen=True)
class CensusCurve:
    delta: Fraction
    points: tuple[CensusPoint, ...]
    band: float

    @property
    def spread(self) -> float:
        tail = [pt.ratio for pt in self.points[-3:]]
        return max(tail) / min(tail)

    @property
    def stable(self) -> bool:
        return self.spread < self.band


def serre_ratio(count: int, Y: int, delta) -> float:
    """count / (Y (log Y)^(delta - 1)), natural log."""
    return count / (Y * math.log(Y) ** (float(delta) - 1.0))


def census_ratios(
    primes: Sequence[int], delta, checkpoints: Sequence[int], band: float = DEFAULT_BAND
) -> CensusCurve:
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise InvalidParameter("delta must lie in (0, 1]")
    if len(checkpoints) < 3:
        raise InvalidParameter("need at least three checkpoints")
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise InvalidParameter("checkpoints must be strictly increasing")
    if checkpoints[0] < 2:
        raise InvalidParameter("checkpoints must be >= 2 (log Y vanishes at 1)")
    points = []
    for Y in checkpoints:
        m = count_squarefree_smooth(primes, Y)
        points.append(CensusPoint(Y, m, serre_ratio(m, Y, delta)))
    return CensusCurve(delta, tuple(points), band)


def check_hypothesis(spec: ResidualRepSpec) -> None:
    bad = conductor_hypothesis_violations(spec)
    if bad:
        raise HypothesisViolated(bad[0])


def omega_primes(spec: ResidualRepSpec, bound: int, workers: int = 1) -> list[int]:
    """Omega up to ``bound``; refuses to return a partial set."""
    sieve = sieve_omega(spec, bound, workers)
    if sieve.unknown:
        raise MissingTrace(sieve.unknown[0], f"{len(sieve.unknown)} primes <= {bound} lack traces")
    return sieve.primes


def nf_lower_bound(spec: ResidualRepSpec, X: int, workers: int = 1) -> int:
    """M_Omega(X // N_rho), a lower bound for N_f(X)."""
    check_hypothesis(spec)
    if X < spec.conductor:
        raise InvalidParameter(f"X={X} is below the Serre conductor {spec.conductor}")
    Y = X // spec.conductor
    return count_squarefree_smooth(omega_primes(spec, Y, workers), Y)


def census_levels(spec: ResidualRepSpec, X: int, cap: int = 10**6, workers: int = 1) -> list[int]:
    """The levels M * N_rho <= X certified through the census."""
    check_hypothesis(spec)
    Y = X // spec.conductor
    if Y < 1:
        return []
    members = enumerate_squarefree_smooth(omega_primes(spec, Y, workers), Y, cap)
    return [m * spec.conductor for m in members]
