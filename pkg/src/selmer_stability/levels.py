"""Carayol's local conditions as a decision procedure on levels.

A level N = N_rho * prod ell^alpha(ell) is admissible when every raised prime
is certified by one of the cases C1, C2a, C2b, C3a, C3b, tried in that order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import factorize, primes_up_to
from .errors import InvalidParameter, MissingTrace
from .omega import ResidualRepSpec


class CarayolCase(enum.Enum):
    C1 = "C1"
    C2A = "C2a"
    C2B = "C2b"
    C3A = "C3a"
    C3B = "C3b"


class LevelStatus(enum.Enum):
    ADMISSIBLE = "Admissible"
    NOT_ADMISSIBLE = "NotAdmissible"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class LevelFactorization:
    N: int
    base: int
    raised: dict[int, tuple[int, CarayolCase]] = field(default_factory=dict)

    def case_breakdown(self) -> str:
        return ";".join(f"{ell}^{a}:{case.value}" for ell, (a, case) in sorted(self.raised.items()))


@dataclass(frozen=True)
class LevelCheck:
    N: int
    status: LevelStatus
    factorization: LevelFactorization | None = None
    reason: str = ""
    prime: int | None = None

    @property
    def admissible(self) -> bool:
        return self.status is LevelStatus.ADMISSIBLE

    def csv_row(self) -> list:
        if self.admissible:
            detail = self.factorization.case_breakdown()
        else:
            detail = self.reason
        return [self.N, self.status.value, detail]


CSV_HEADER = ["N", "verdict", "case_breakdown"]


def _certify_prime(spec: ResidualRepSpec, ell: int, alpha: int) -> CarayolCase | None:
    """First Carayol case that certifies ell^alpha; raises MissingTrace when undecidable."""
    p = spec.p
    at_base = spec.conductor % ell == 0
    minus_one = ell % p == p - 1
    plus_one = ell % p == 1
    missing: MissingTrace | None = None

    def trace() -> int:
        return spec.a_ell_mod_p(ell)

    if not at_base and alpha == 1:
        try:
            a = trace()
            if (ell * a * a - (1 + ell) ** 2 * ell) % p == 0:
                return CarayolCase.C1
        except MissingTrace as exc:
            missing = exc
    if minus_one:
        if not at_base and alpha == 2:
            try:
                if trace() == 0:
                    return CarayolCase.C2A
            except MissingTrace as exc:
                missing = exc
        # det rho-bar is the mod-p cyclotomic character, unramified away from p.
        if at_base and alpha == 1:
            return CarayolCase.C2B
    if plus_one:
        if not at_base and alpha == 2:
            return CarayolCase.C3A
        if alpha == 1:
            return CarayolCase.C3B
    if missing is not None:
        raise missing
    return None


def carayol_check(spec: ResidualRepSpec, N: int) -> LevelCheck:
    if N < 1:
        raise InvalidParameter("level must be positive")
    if N % spec.p == 0:
        return LevelCheck(N, LevelStatus.NOT_ADMISSIBLE, reason="PDividesLevel")
    if N % spec.conductor:
        return LevelCheck(N, LevelStatus.NOT_ADMISSIBLE, reason="BaseNotDividing")
    raised: dict[int, tuple[int, CarayolCase]] = {}
    undecided: int | None = None
    for ell, alpha in sorted(factorize(N // spec.conductor).items()):
        try:
            case = _certify_prime(spec, ell, alpha)
        except MissingTrace:
            # a definite failure at a later prime still wins
            undecided = ell if undecided is None else undecided
            continue
        if case is None:
            return LevelCheck(N, LevelStatus.NOT_ADMISSIBLE, reason=f"FailedAt({ell})", prime=ell)
        raised[ell] = (alpha, case)
    if undecided is not None:
        return LevelCheck(N, LevelStatus.UNKNOWN, reason=f"MissingTrace({undecided})", prime=undecided)
    return LevelCheck(N, LevelStatus.ADMISSIBLE, LevelFactorization(N, spec.conductor, raised))


@dataclass(frozen=True)
class LevelEnumeration:
    X: int
    checks: tuple[LevelCheck, ...]

    @property
    def admissible(self) -> list[int]:
        return [c.N for c in self.checks if c.admissible]

    @property
    def unknown(self) -> list[int]:
        return [c.N for c in self.checks if c.status is LevelStatus.UNKNOWN]

    @property
    def n(self) -> int:
        return len(self.admissible)


def enumerate_admissible(spec: ResidualRepSpec, X: int, workers: int = 1) -> LevelEnumeration:
    """Check every multiple of N_rho up to X; n(rho; X) is the admissible count."""
    if X < 1:
        raise InvalidParameter("X must be positive")
    spec.warm(primes_up_to(X // spec.conductor), workers)
    levels = range(spec.conductor, X + 1, spec.conductor)
    return LevelEnumeration(X, tuple(carayol_check(spec, N) for N in levels))
