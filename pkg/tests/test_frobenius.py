import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import legendre_symbol, primerange

from selmer_stability import CURVE_11A1, ResidualRepSpec
from selmer_stability.errors import (
    BadReduction,
    DuplicatePrime,
    InvalidParameter,
    MissingTrace,
    NonPrimeKey,
    ResourceLimit,
    TraceTableError,
    ValueOutOfRange,
)
from selmer_stability.frobenius import (
    CurveSpec,
    TraceTable,
    count_points,
    frobenius_data,
    load_trace_table,
    prefetch_traces,
    trace_of_frobenius,
    write_trace_table,
)

from oracles import points_by_enumeration

E = CurveSpec(0, 0, 0, 1, 1)  # y^2 = x^3 + x + 1, discriminant -496


def test_point_count_examples():
    assert count_points(E, 5) == 9
    assert count_points(E, 3) == 4
    assert trace_of_frobenius(E, 5) == -3
    assert trace_of_frobenius(E, 3) == 0
    assert trace_of_frobenius(CURVE_11A1, 5) == 1
    with pytest.raises(BadReduction):
        count_points(E, 2)


def test_discriminants():
    assert E.discriminant == -496
    assert CURVE_11A1.discriminant == -161051  # -11^5


def test_bound_and_primality():
    with pytest.raises(ResourceLimit):
        count_points(E, 101, bound=100)
    with pytest.raises(InvalidParameter):
        count_points(E, 9)
    with pytest.raises(InvalidParameter):
        CurveSpec(0, 0, 0, 0, 0)


CURVES = [(0, 0, 0, 1, 1), (0, -1, 1, -10, -20), (1, 0, 1, 4, -6), (1, -1, 1, -3, 3), (0, 1, 1, 0, 0)]


@pytest.mark.parametrize("coeffs", CURVES)
def test_matches_enumeration_oracle(coeffs):
    curve = CurveSpec(*coeffs)
    for ell in primerange(2, 200):
        if curve.discriminant % ell == 0:
            continue
        assert count_points(curve, ell) == points_by_enumeration(coeffs, ell), (coeffs, ell)


def _random_good_pairs(n, seed=7):
    rng = random.Random(seed)
    primes = list(primerange(2, 5000))
    pairs = []
    while len(pairs) < n:
        coeffs = tuple(rng.randint(-50, 50) for _ in range(5))
        ell = rng.choice(primes)
        try:
            curve = CurveSpec(*coeffs)
        except InvalidParameter:
            continue
        if curve.discriminant % ell:
            pairs.append((curve, ell))
    return pairs


def test_hasse_bound_random():
    for curve, ell in _random_good_pairs(1000):
        n = count_points(curve, ell)
        assert abs(ell + 1 - n) <= 2 * math.isqrt(ell) + 1
        assert (ell + 1 - n) ** 2 <= 4 * ell


@settings(max_examples=60)
@given(st.integers(-30, 30), st.integers(-30, 30), st.sampled_from(list(primerange(5, 400))))
def test_quadratic_twist_negates_trace(a, b, ell):
    if (4 * a**3 + 27 * b**2) % ell == 0:
        return
    D = next(d for d in range(2, ell) if legendre_symbol(d, ell) == -1)
    curve = CurveSpec(0, 0, 0, a, b)
    twist = CurveSpec(0, 0, 0, a * D * D, b * D**3)
    assert trace_of_frobenius(twist, ell) == -trace_of_frobenius(curve, ell)


def test_prefetch_is_thread_count_independent():
    primes = [l for l in primerange(2, 3000) if l != 11]
    serial = prefetch_traces(CURVE_11A1, primes, workers=1)
    threaded = prefetch_traces(CURVE_11A1, primes, workers=4)
    assert serial == threaded


def _write(tmp_path, text, name="t.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_load_examples(tmp_path):
    table = load_trace_table(_write(tmp_path, "2,5\n3,6\n"), p=7)
    assert dict(table.entries) == {2: 5, 3: 6}
    with pytest.raises(NonPrimeKey) as err:
        load_trace_table(_write(tmp_path, "4,1\n"), p=7)
    assert err.value.key == 4 and "NonPrimeKey(4)" in str(err.value)
    assert len(load_trace_table(_write(tmp_path, ""), p=7)) == 0


def test_load_header_and_errors(tmp_path):
    table = load_trace_table(_write(tmp_path, "# p=7\n# from q-expansion\nell,a_ell\n2,-2\n5,1\n"))
    assert table.p == 7 and dict(table.entries) == {2: 5, 5: 1}
    assert table.provenance == "from q-expansion"
    with pytest.raises(TraceTableError):
        load_trace_table(_write(tmp_path, "2,1\n"))
    with pytest.raises(TraceTableError):
        load_trace_table(_write(tmp_path, "# p=5\n2,1\n"), p=7)
    with pytest.raises(DuplicatePrime):
        load_trace_table(_write(tmp_path, "2,1\n2,1\n"), p=7)
    with pytest.raises(ValueOutOfRange):
        load_trace_table(_write(tmp_path, "2,9\n"), p=7)
    with pytest.raises(TraceTableError):
        load_trace_table(_write(tmp_path, "2;1\n"), p=7)


def test_write_load_roundtrip(tmp_path):
    traces = {ell: trace_of_frobenius(CURVE_11A1, ell) for ell in primerange(2, 500) if ell != 11}
    path = tmp_path / "11a1.csv"
    write_trace_table(path, 7, traces, "11a1 point counts")
    table = load_trace_table(path)
    assert dict(table.entries) == {ell: a % 7 for ell, a in traces.items()}


def test_table_object_validation():
    with pytest.raises(NonPrimeKey):
        TraceTable(7, {9: 1})
    with pytest.raises(ValueOutOfRange):
        TraceTable(7, {2: 7})
    with pytest.raises(MissingTrace):
        TraceTable(7, {2: 1}).get(3)


def test_frobenius_data(spec7):
    assert frobenius_data(spec7, 5) == frobenius_data(spec7, 5)
    fc = frobenius_data(spec7, 5)
    assert (fc.trace, fc.det) == (1, 5)
    with pytest.raises(InvalidParameter):
        frobenius_data(spec7, 11)
    with pytest.raises(InvalidParameter):
        frobenius_data(spec7, 7)
    tabled = ResidualRepSpec(7, 11, TraceTable(7, {2: 5}))
    with pytest.raises(MissingTrace):
        frobenius_data(tabled, 101)


@given(st.sampled_from([l for l in primerange(2, 2000) if l not in (7, 11)]))
def test_frobenius_det_is_ell(spec7, ell):
    assert frobenius_data(spec7, ell).det == ell % 7
