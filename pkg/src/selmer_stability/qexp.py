"""q-expansions of eta products, used to produce trace tables past the point-counting bound.

For a newform that is an eta product, e.g. 11a1 = eta(z)^2 eta(11z)^2, the
coefficients a_n for all n up to 10^6 come out of a couple of FFT products,
far cheaper than counting points prime by prime.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .arith import primes_up_to
from .errors import InvalidParameter

# Exponents of eta(d z) in the weight-2 newform of the isogeny class 11a.
ETA_11A = {1: 2, 11: 2}


def euler_product(length: int, step: int = 1) -> np.ndarray:
    """Coefficients of prod_{n>=1} (1 - q^(step n)) below q^length (pentagonal number theorem)."""
    out = np.zeros(length, dtype=np.int64)
    k = 0
    while True:
        hit = False
        for j in ((0,) if k == 0 else (k, -k)):
            e = step * (j * (3 * j - 1) // 2)
            if e < length:
                out[e] += -1 if j % 2 else 1
                hit = True
        if not hit and k > 0:
            return out
        k += 1


def _multiply(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    size = 1 << int(np.ceil(np.log2(2 * length)))
    raw = np.fft.irfft(np.fft.rfft(a.astype(np.float64), size) * np.fft.rfft(b.astype(np.float64), size), size)
    raw = raw[:length]
    rounded = np.rint(raw)
    if np.abs(raw - rounded).max() > 0.25:
        raise ArithmeticError("FFT product lost integer exactness; lower the series length")
    return rounded.astype(np.int64)


def eta_product_coefficients(exponents: Mapping[int, int], n_max: int) -> tuple[int, np.ndarray]:
    """Return (shift, c) with prod_d eta(d z)^{r_d} = q^shift * sum_k c[k] q^k, through q^n_max.

    Only nonnegative exponents are supported.
    """
    weight_shift = sum(d * r for d, r in exponents.items())
    if weight_shift % 24:
        raise InvalidParameter("sum of d * r_d must be divisible by 24 for an integral q-shift")
    if any(r < 0 for r in exponents.values()):
        raise InvalidParameter("eta quotients with negative exponents are not supported")
    shift = weight_shift // 24
    length = max(n_max - shift + 1, 1)
    series = np.zeros(length, dtype=np.int64)
    series[0] = 1
    for d, r in sorted(exponents.items()):
        factor = euler_product(length, d)
        for _ in range(r):
            series = _multiply(series, factor, length)
    return shift, series


def eta_product_traces(exponents: Mapping[int, int], bound: int) -> dict[int, int]:
    """a_ell for every prime ell <= bound of the eta product with given exponents."""
    shift, series = eta_product_coefficients(exponents, bound)
    return {ell: int(series[ell - shift]) for ell in primes_up_to(bound) if ell >= shift}
