"""Brute-force Chebotarev check for the Omega matrix condition in GL2(F_p).

A matrix is an *Omega class* when it is conjugate over F_p to diag(-a, -1)
with a not in {0, 1, -1}.  The proportion of such matrices in GL2(F_p) is
(p - 3) / (p - 1)^2, which :func:`omega_density_bruteforce` confirms by
enumerating the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .arith import require_prime
from .errors import InvalidParameter, ResourceLimit

DEFAULT_MAX_P = 13

Matrix2 = Sequence[Sequence[int]]


@dataclass(frozen=True)
class DensityReport:
    p: int
    group_order: int
    matching_count: int
    exact_fraction: Fraction
    closed_form: Fraction

    @property
    def match(self) -> bool:
        return self.exact_fraction == self.closed_form

    def csv_row(self) -> list:
        return [
            self.p,
            self.group_order,
            self.matching_count,
            self.exact_fraction.numerator,
            self.exact_fraction.denominator,
            self.closed_form.numerator,
            self.closed_form.denominator,
            str(self.match).lower(),
        ]


CSV_HEADER = [
    "p",
    "group_order",
    "matching_count",
    "fraction_num",
    "fraction_den",
    "closed_form_num",
    "closed_form_den",
    "match",
]


def _omega_from_trace_det(tr: int, det: int, p: int) -> bool:
    # -1 is a root of x^2 - tr x + det  <=>  1 + tr + det = 0.
    # The other root is then mu = det / (-1) = -det.
    if (1 + tr + det) % p:
        return False
    mu = -det % p
    # mu != -1 gives distinct eigenvalues (so diagonalizable); mu != 1 excludes a = -1.
    return mu != p - 1 and mu != 1


def is_omega_class(m: Matrix2, p: int) -> bool:
    """True iff ``m`` is conjugate to diag(-a, -1) over F_p with a not in {0, 1, -1}."""
    (a, b), (c, d) = m
    det = (a * d - b * c) % p
    if det == 0:
        raise InvalidParameter("matrix is not invertible mod p")
    return _omega_from_trace_det((a + d) % p, det, p)


def group_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)


def omega_density_closed_form(p: int) -> Fraction:
    require_prime(p, "p", minimum=5)
    return Fraction(p - 3, (p - 1) ** 2)


def omega_density_bruteforce(p: int, max_p: int = DEFAULT_MAX_P) -> DensityReport:
    """Enumerate GL2(F_p) and count Omega-class matrices exactly."""
    require_prime(p, "p", minimum=5)
    if p > max_p:
        raise ResourceLimit(f"p={p} exceeds enumeration bound {max_p}; raise max_p to allow it")
    invertible = 0
    matching = 0
    for a, b, c, d in product(range(p), repeat=4):
        det = (a * d - b * c) % p
        if det == 0:
            continue
        invertible += 1
        if _omega_from_trace_det((a + d) % p, det, p):
            matching += 1
    return DensityReport(
        p=p,
        group_order=invertible,
        matching_count=matching,
        exact_fraction=Fraction(matching, invertible),
        closed_form=omega_density_closed_form(p),
    )
