"""Membership of primes in Omega and its empirical density.

A prime ell is in Omega when ell does not divide N p, ell != +-1 (mod p), and
the residual Frobenius at ell is conjugate to diag(-ell, -1).  With
det = ell (mod p) the last condition is the trace test a_ell = -(ell + 1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_prime, prime_divisors, primes_up_to, require_prime
from .errors import BadReduction, InvalidParameter, MissingTrace, ResourceLimit
from .frobenius import CurveSpec, TraceTable, prefetch_traces, trace_of_frobenius
from .gl2_density import omega_density_closed_form


@dataclass(frozen=True)
class ResidualRepSpec:
    """The data standing in for a fixed residual representation rho-bar."""

    p: int
    conductor: int
    source: CurveSpec | TraceTable
    surjective: bool = False

    def __post_init__(self):
        require_prime(self.p, "p", minimum=5)
        if self.conductor < 1:
            raise InvalidParameter("Serre conductor must be positive")
        if math.gcd(self.conductor, self.p) != 1:
            raise InvalidParameter(f"conductor {self.conductor} is not coprime to p={self.p}")
        if isinstance(self.source, TraceTable) and self.source.p != self.p:
            raise InvalidParameter(f"trace table is mod {self.source.p}, spec is mod {self.p}")

    def a_ell_mod_p(self, ell: int) -> int:
        if isinstance(self.source, TraceTable):
            return self.source.get(ell)
        try:
            return trace_of_frobenius(self.source, ell) % self.p
        except (BadReduction, ResourceLimit) as exc:
            raise MissingTrace(ell, str(exc)) from exc

    def warm(self, primes, workers: int = 1) -> None:
        if isinstance(self.source, CurveSpec):
            prefetch_traces(self.source, primes, workers)


class Verdict(enum.Enum):
    IN_OMEGA = "InOmega"
    EXCLUDED = "Excluded"
    UNKNOWN = "Unknown"


class Reason(enum.Enum):
    DIVIDES_LEVEL = "DividesLevel"
    EQUALS_P = "EqualsP"
    CONGRUENCE_PLUS_ONE = "CongruencePlusOne"
    CONGRUENCE_MINUS_ONE = "CongruenceMinusOne"
    TRACE_MISMATCH = "TraceMismatch"
    MISSING_TRACE = "MissingTrace"


@dataclass(frozen=True)
class PrimeClassification:
    ell: int
    verdict: Verdict
    reason: Reason | None = None
    a_ell_mod_p: int | None = None

    @property
    def in_omega(self) -> bool:
        return self.verdict is Verdict.IN_OMEGA

    def csv_row(self) -> list:
        return [
            self.ell,
            self.verdict.value,
            self.reason.value if self.reason else "",
            "" if self.a_ell_mod_p is None else self.a_ell_mod_p,
        ]


CSV_HEADER = ["ell", "verdict", "reason", "a_ell_mod_p"]


def classify_prime(spec: ResidualRepSpec, ell: int) -> PrimeClassification:
    if ell < 2 or not is_prime(ell):
        raise InvalidParameter(f"{ell} is not prime")
    p = spec.p
    if spec.conductor % ell == 0:
        return PrimeClassification(ell, Verdict.EXCLUDED, Reason.DIVIDES_LEVEL)
    if ell == p:
        return PrimeClassification(ell, Verdict.EXCLUDED, Reason.EQUALS_P)
    if ell % p == 1:
        return PrimeClassification(ell, Verdict.EXCLUDED, Reason.CONGRUENCE_PLUS_ONE)
    if ell % p == p - 1:
        return PrimeClassification(ell, Verdict.EXCLUDED, Reason.CONGRUENCE_MINUS_ONE)
    try:
        a = spec.a_ell_mod_p(ell)
    except MissingTrace:
        return PrimeClassification(ell, Verdict.UNKNOWN, Reason.MISSING_TRACE)
    if (a + ell + 1) % p == 0:
        return PrimeClassification(ell, Verdict.IN_OMEGA, None, a)
    return PrimeClassification(ell, Verdict.EXCLUDED, Reason.TRACE_MISMATCH, a)


def _needs_trace(spec: ResidualRepSpec, ell: int) -> bool:
    return spec.conductor % ell != 0 and ell % spec.p not in (0, 1, spec.p - 1)


@dataclass(frozen=True)
class OmegaSieve:
    bound: int
    classifications: tuple[PrimeClassification, ...]

    @property
    def primes(self) -> list[int]:
        return [c.ell for c in self.classifications if c.verdict is Verdict.IN_OMEGA]

    @property
    def unknown(self) -> list[int]:
        return [c.ell for c in self.classifications if c.verdict is Verdict.UNKNOWN]


def sieve_omega(spec: ResidualRepSpec, bound: int, workers: int = 1) -> OmegaSieve:
    """Classify every prime up to ``bound``; Omega members come back sorted."""
    primes = primes_up_to(bound)
    spec.warm([ell for ell in primes if _needs_trace(spec, ell)], workers)
    return OmegaSieve(bound, tuple(classify_prime(spec, ell) for ell in primes))


@dataclass(frozen=True)
class DensityEstimate:
    bound: int
    omega_count: int
    prime_count: int
    unknown_count: int
    fraction: Fraction
    target: Fraction

    @property
    def deviation(self) -> float:
        return abs(float(self.fraction) - float(self.target)) / float(self.target)


def empirical_density(
    spec: ResidualRepSpec, bound: int, require_surjective: bool = True, workers: int = 1
) -> DensityEstimate:
    """Fraction of unramified primes up to ``bound`` that land in Omega.

    Primes dividing N p are left out of both counts.  Refuses to compare
    against the Chebotarev target unless surjectivity has been asserted.
    """
    if require_surjective and not spec.surjective:
        raise InvalidParameter(
            "density comparison needs a surjective residual representation; "
            "set surjective=true once that is known"
        )
    sieve = sieve_omega(spec, bound, workers)
    considered = [
        c for c in sieve.classifications if (spec.conductor * spec.p) % c.ell != 0 and c.verdict is not Verdict.UNKNOWN
    ]
    if not considered:
        raise InvalidParameter(f"no unramified primes with known traces up to {bound}")
    omega_count = sum(1 for c in considered if c.in_omega)
    return DensityEstimate(
        bound=bound,
        omega_count=omega_count,
        prime_count=len(considered),
        unknown_count=len(sieve.unknown),
        fraction=Fraction(omega_count, len(considered)),
        target=omega_density_closed_form(spec.p),
    )


def conductor_hypothesis_violations(spec: ResidualRepSpec) -> list[int]:
    """Primes ell = +-1 (mod p) dividing the Serre conductor (should be none)."""
    return [ell for ell in prime_divisors(spec.conductor) if ell % spec.p in (1, spec.p - 1)]
