"""Exact 2x2 linear algebra over Z/p^N for the local beta_ell bound.

The local Galois action on A = (Q_p/Z_p)^2 at a tamely ramified ell != p is
given by a Frobenius lift sigma and a tame generator tau, subject to
sigma tau sigma^-1 = tau^ell.  The inertia invariants H^0(I, A) are read off
from the Smith normal form of tau - 1: an elementary divisor p^a gives a
cyclic summand of order p^a, a vanishing one gives a copy of Q_p/Z_p.  Only
the finite summands with a >= 1 survive in H^0 / p H^0, and the dimension
of the sigma-fixed part of that quotient bounds beta_ell from above.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import is_prime, require_prime
from .errors import InvalidParameter, PrecisionInsufficient, RelationViolated

DEFAULT_PRECISION = 4

Mat = tuple[tuple[int, int], tuple[int, int]]


class _Divisible:
    """Elementary-divisor exponent of an entry that vanishes mod p^N."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Divisible"

    def __reduce__(self):
        return (_Divisible, ())


DIVISIBLE = _Divisible()


# --- matrix helpers ---------------------------------------------------------


def as_matrix(entries: Sequence, modulus: int) -> Mat:
    """Accept ((a, b), (c, d)) or a flat (a, b, c, d), reduced mod ``modulus``."""
    flat = [x for row in entries for x in row] if isinstance(entries[0], (tuple, list)) else list(entries)
    if len(flat) != 4:
        raise InvalidParameter(f"expected 4 matrix entries, got {len(flat)}")
    a, b, c, d = (int(x) % modulus for x in flat)
    return ((a, b), (c, d))


def parse_matrix(text: str, modulus: int) -> Mat:
    try:
        return as_matrix([int(s) for s in text.split(",")], modulus)
    except ValueError as exc:
        raise InvalidParameter(f"cannot parse matrix {text!r}; expected a,b,c,d") from exc


def identity() -> Mat:
    return ((1, 0), (0, 1))


def mat_mul(x: Mat, y: Mat, q: int) -> Mat:
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return (((a * e + b * g) % q, (a * f + b * h) % q), ((c * e + d * g) % q, (c * f + d * h) % q))


def mat_pow(x: Mat, n: int, q: int) -> Mat:
    out = identity()
    while n:
        if n & 1:
            out = mat_mul(out, x, q)
        x = mat_mul(x, x, q)
        n >>= 1
    return out


def det(x: Mat, q: int) -> int:
    return (x[0][0] * x[1][1] - x[0][1] * x[1][0]) % q


def mat_inv(x: Mat, q: int) -> Mat:
    inv = pow(det(x, q), -1, q)
    (a, b), (c, d) = x
    return ((d * inv % q, -b * inv % q), (-c * inv % q, a * inv % q))


def valuation(x: int, p: int, N: int) -> int:
    """p-adic valuation of x mod p^N, capped at N (N means x = 0 mod p^N)."""
    x %= p**N
    if x == 0:
        return N
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


# --- Smith normal form ------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    exponents: tuple
    diagonal: tuple[int, int]
    U: Mat
    V: Mat


def smith_normal_form(m, p: int, N: int) -> SmithForm:
    """U m V = diag(p^a u, p^b v) over Z/p^N with a <= b; zero entries report DIVISIBLE."""
    if N < 2:
        raise InvalidParameter("precision N must be >= 2")
    q = p**N
    A = [list(row) for row in as_matrix(m, q)]
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    cells = [(valuation(A[i][j], p, N), i, j) for i in range(2) for j in range(2)]
    v0, i0, j0 = min(cells)
    if v0 == N:
        return SmithForm((DIVISIBLE, DIVISIBLE), (0, 0), identity(), identity())
    if i0:
        A.reverse()
        U.reverse()
    if j0:
        for row in A:
            row.reverse()
        for row in V:
            row.reverse()

    scale = p**v0
    unit_inv = pow(A[0][0] // scale, -1, q)
    # every entry has valuation >= v0, so the exact quotients below exist
    t = (A[1][0] // scale) * unit_inv % q
    A[1] = [(A[1][k] - t * A[0][k]) % q for k in range(2)]
    U[1] = [(U[1][k] - t * U[0][k]) % q for k in range(2)]
    s = (A[0][1] // scale) * unit_inv % q
    for row in A:
        row[1] = (row[1] - s * row[0]) % q
    for row in V:
        row[1] = (row[1] - s * row[0]) % q

    d1, d2 = A[0][0], A[1][1]
    e2 = valuation(d2, p, N)
    exponents = (v0, DIVISIBLE if e2 == N else e2)
    return SmithForm(exponents, (d1, d2), tuple(map(tuple, U)), tuple(map(tuple, V)))


# --- local representation data ----------------------------------------------


@dataclass(frozen=True)
class LocalRepData:
    p: int
    precision: int
    ell: int
    sigma: Mat
    tau: Mat

    def __post_init__(self):
        require_prime(self.p, "p", minimum=3)
        if self.precision < 2:
            raise InvalidParameter("precision N must be >= 2")
        if self.ell == self.p or self.ell < 2 or not is_prime(self.ell):
            raise InvalidParameter(f"ell={self.ell} must be a prime different from p")
        q = self.modulus
        object.__setattr__(self, "sigma", as_matrix(self.sigma, q))
        object.__setattr__(self, "tau", as_matrix(self.tau, q))
        for name in ("sigma", "tau"):
            if det(getattr(self, name), self.p) == 0:
                raise InvalidParameter(f"{name} is not invertible mod p")

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def conjugate(self, g) -> "LocalRepData":
        q = self.modulus
        g = as_matrix(g, q)
        gi = mat_inv(g, q)
        return LocalRepData(
            self.p,
            self.precision,
            self.ell,
            mat_mul(mat_mul(g, self.sigma, q), gi, q),
            mat_mul(mat_mul(g, self.tau, q), gi, q),
        )


@dataclass(frozen=True)
class InvariantStructure:
    divisors: tuple
    quotient_dim: int
    frob_action: tuple[tuple[int, ...], ...]
    beta_bound: int


def validate_relation(data: LocalRepData) -> bool:
    """sigma tau sigma^-1 == tau^ell mod p^N, checked as sigma tau == tau^ell sigma."""
    q = data.modulus
    return mat_mul(data.sigma, data.tau, q) == mat_mul(mat_pow(data.tau, data.ell, q), data.sigma, q)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in rows]
    if not rows:
        return 0
    if len(rows) == 1:
        return int(rows[0][0] != 0)
    (a, b), (c, d) = rows
    if (a * d - b * c) % p:
        return 2
    return int(any((a, b, c, d)))


def _fixed_dim(action: list[list[int]], p: int) -> int:
    k = len(action)
    shifted = [[action[i][j] - (i == j) for j in range(k)] for i in range(k)]
    return k - _rank_mod_p(shifted, p)


def _quotient_action(sigma_w: Mat, exps: list[int], p: int) -> list[list[int]]:
    """Matrix of sigma on the generators p^-e_i w_i of the finite summands, mod p."""
    action = []
    for j, ej in exps:
        row = []
        for i, ei in exps:
            entry = sigma_w[j][i]
            if ej >= ei:
                row.append(entry * p ** (ej - ei) % p)
            else:
                shift = p ** (ei - ej)
                if entry % shift:
                    raise RelationViolated("inertia invariants are not stable under sigma")
                row.append(entry // shift % p)
        action.append(row)
    return action


def inertia_invariants(data: LocalRepData) -> InvariantStructure:
    if not validate_relation(data):
        raise RelationViolated("sigma tau sigma^-1 != tau^ell mod p^N")
    p, N, q = data.p, data.precision, data.modulus
    tau_minus_one = ((data.tau[0][0] - 1, data.tau[0][1]), (data.tau[1][0], data.tau[1][1] - 1))
    snf = smith_normal_form(tau_minus_one, p, N)
    V = snf.V
    sigma_w = mat_mul(mat_mul(mat_inv(V, q), data.sigma, q), V, q)

    # exponent 0 gives a zero summand, DIVISIBLE a p-divisible one: neither survives mod p
    finite = [(i, e) for i, e in enumerate(snf.exponents) if e is not DIVISIBLE and e >= 1]
    action = _quotient_action(sigma_w, finite, p)
    beta = _fixed_dim(action, p)

    for idx, (_, e) in enumerate(finite):
        if e == N - 1:
            # a summand at the truncation edge: refuse if reading it as divisible changes beta
            rest = [r for r in finite if r[0] != finite[idx][0]]
            if _fixed_dim(_quotient_action(sigma_w, rest, p), p) != beta:
                raise PrecisionInsufficient(
                    f"elementary divisor p^{e} sits at precision edge N-1 and decides beta; raise N"
                )
    frob = tuple(tuple(r) for r in action)
    return InvariantStructure(snf.exponents, len(finite), frob, beta)


def beta_upper_bound(data: LocalRepData) -> int:
    """Upper bound for beta_ell: dimension of the Frobenius-fixed part of H^0(I, A)/p."""
    return inertia_invariants(data).beta_bound


# beta_p vanishes outright for p-ordinary forms; it is a constant, not computed.
BETA_AT_P = 0
