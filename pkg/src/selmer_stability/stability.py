"""Selmer-dimension bookkeeping and the stability certificate for raised levels.

Nothing here computes a Selmer group.  The ledger combines user-supplied local
and global dimensions the way Wiles' Euler-characteristic formula does; the
certificate checks the two arithmetic hypotheses under which the residual
Selmer rank cannot change when the level is raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .arith import factorize
from .errors import ConfigError, InvalidParameter
from .omega import ResidualRepSpec, Verdict, classify_prime, conductor_hypothesis_violations

ARCHIMEDEAN = "inf"

Place = int | str


@dataclass(frozen=True)
class LedgerInput:
    """Dimensions feeding the Wiles formula.

    ``local_terms`` maps each place (a prime, or ``"inf"``) to the pair
    (dim L_v, dim H^0(Q_v, M)).  The archimedean slot is taken as given.
    """

    p: int
    h0_global: int = 0
    h0_global_dual: int = 0
    local_terms: Mapping[Place, tuple[int, int]] = field(default_factory=dict)
    sha2_dim: int = 0
    residual_selmer_dim: int = 0
    betas: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        scalars = [self.h0_global, self.h0_global_dual, self.sha2_dim, self.residual_selmer_dim]
        pairs = [x for pair in self.local_terms.values() for x in pair]
        if any(x < 0 for x in scalars + pairs + list(self.betas.values())):
            raise InvalidParameter("dimensions must be nonnegative")

    def local(self, place: Place) -> tuple[int, int]:
        return self.local_terms.get(place, (0, 0))


def wiles_ledger(data: LedgerInput) -> int:
    """dim Sel_L - dim Sel_L-perp = h0(M) - h0(M*) + sum_v (dim L_v - h0(Q_v, M))."""
    local = sum(dim_l - h0 for dim_l, h0 in data.local_terms.values())
    return data.h0_global - data.h0_global_dual + local


def wiles_reduced(data: LedgerInput) -> int:
    """The p and archimedean terms left once every other place cancels."""
    dim_lp, h0_p = data.local(data.p)
    return dim_lp - h0_p - data.local(ARCHIMEDEAN)[1]


def selmer_dim_bounds(data: LedgerInput) -> tuple[int, int]:
    total_beta = sum(data.betas.values())
    upper = data.residual_selmer_dim + total_beta
    lower = total_beta + wiles_reduced(data) + data.sha2_dim
    return lower, upper


def load_ledger(path: str | Path) -> LedgerInput:
    """Read a flat ``key = value`` ledger file.

    Keys: p, h0_Q, h0_Q_star, sha2, residual_selmer, local.<place> = dim_L,h0
    (place is a prime or ``inf``), beta.<prime> = value.
    """
    scalars: dict[str, int] = {}
    local: dict[Place, tuple[int, int]] = {}
    betas: dict[int, int] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key.startswith("local."):
                place = key[6:]
                dims = tuple(int(s) for s in value.split(","))
                if len(dims) != 2:
                    raise ConfigError(f"line {lineno}: local term needs dim_L,h0")
                local[place if place == ARCHIMEDEAN else int(place)] = dims
            elif key.startswith("beta."):
                betas[int(key[5:])] = int(value)
            elif key in ("p", "h0_Q", "h0_Q_star", "sha2", "residual_selmer"):
                scalars[key] = int(value)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    if "p" not in scalars:
        raise ConfigError("ledger needs p")
    return LedgerInput(
        p=scalars["p"],
        h0_global=scalars.get("h0_Q", 0),
        h0_global_dual=scalars.get("h0_Q_star", 0),
        local_terms=local,
        sha2_dim=scalars.get("sha2", 0),
        residual_selmer_dim=scalars.get("residual_selmer", 0),
        betas=betas,
    )


@dataclass(frozen=True)
class StabilityVerdict:
    level: int
    certified: bool
    reasons: tuple[str, ...] = ()


def _congruence_label(ell: int, p: int) -> str:
    return f"{ell} = {'+1' if ell % p == 1 else '-1'} (mod {p})"


def stability_certificate(spec: ResidualRepSpec, level: int) -> StabilityVerdict:
    """Certify that raising to ``level`` keeps the residual Selmer rank.

    Certified iff no prime = +-1 (mod p) divides N_rho and every prime of the
    (squarefree) cofactor level / N_rho lies in Omega.
    """
    p = spec.p
    reasons: list[str] = []
    if level < 1:
        raise InvalidParameter("level must be positive")
    if level % spec.conductor:
        reasons.append(f"N_rho={spec.conductor} does not divide {level}")
    if level % p == 0:
        reasons.append(f"p={p} divides {level}")
    for ell in conductor_hypothesis_violations(spec):
        reasons.append(f"{_congruence_label(ell, p)} divides N_rho")
    if not reasons:
        for ell, e in sorted(factorize(level // spec.conductor).items()):
            if e > 1:
                reasons.append(f"{ell}^{e}: cofactor not squarefree")
                continue
            c = classify_prime(spec, ell)
            if c.verdict is Verdict.IN_OMEGA:
                continue
            if c.reason is not None and c.reason.value.startswith("Congruence"):
                reasons.append(f"{_congruence_label(ell, p)}")
            else:
                reasons.append(f"{ell}: not in Omega ({c.reason.value})")
    return StabilityVerdict(level, not reasons, tuple(reasons))
