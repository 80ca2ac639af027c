import random
from fractions import Fraction

import pytest
from sympy import primerange

from selmer_stability import CURVE_11A1
from selmer_stability.errors import InvalidParameter
from selmer_stability.frobenius import TraceTable, frobenius_data
from selmer_stability.gl2_density import is_omega_class
from selmer_stability.omega import (
    Reason,
    ResidualRepSpec,
    Verdict,
    classify_prime,
    conductor_hypothesis_violations,
    empirical_density,
    sieve_omega,
)

from oracles import points_by_enumeration


def test_classify_examples(spec7):
    assert classify_prime(spec7, 13).reason is Reason.CONGRUENCE_MINUS_ONE
    assert classify_prime(spec7, 29).reason is Reason.CONGRUENCE_PLUS_ONE
    assert classify_prime(spec7, 11).reason is Reason.DIVIDES_LEVEL
    assert classify_prime(spec7, 7).reason is Reason.EQUALS_P
    assert classify_prime(spec7, 5).verdict is Verdict.IN_OMEGA
    two = classify_prime(spec7, 2)
    assert (two.verdict, two.reason, two.a_ell_mod_p) == (Verdict.EXCLUDED, Reason.TRACE_MISMATCH, 5)


def test_sieve_examples(spec7):
    assert sieve_omega(spec7, 10).primes == [5]
    assert sieve_omega(spec7, 4).primes == []
    assert sieve_omega(spec7, 1).primes == []
    assert sieve_omega(spec7, 1).classifications == ()


def test_sieve_against_enumeration_oracle(spec7):
    expected = []
    for ell in primerange(2, 600):
        if ell in (7, 11) or ell % 7 in (1, 6):
            continue
        a = ell + 1 - points_by_enumeration(CURVE_11A1.coefficients, ell)
        if (a + ell + 1) % 7 == 0:
            expected.append(ell)
    assert sieve_omega(spec7, 600).primes == expected


def test_every_prime_gets_one_verdict(spec7):
    result = sieve_omega(spec7, 2000)
    assert [c.ell for c in result.classifications] == list(primerange(2, 2001))
    for c in result.classifications:
        assert (c.verdict is Verdict.IN_OMEGA) == (c.reason is None)


def test_order_and_threads_do_not_matter(spec7):
    primes = list(primerange(2, 3000))
    shuffled = primes[:]
    random.Random(3).shuffle(shuffled)
    by_shuffle = sorted(c.ell for c in (classify_prime(spec7, l) for l in shuffled) if c.in_omega)
    assert by_shuffle == sieve_omega(spec7, 3000).primes == sieve_omega(spec7, 3000, workers=4).primes


def test_in_omega_matches_gl2_class(spec7):
    for ell in sieve_omega(spec7, 3000).primes:
        assert is_omega_class(((-ell % 7, 0), (0, 6)), 7)
        fc = frobenius_data(spec7, ell)
        assert fc.trace == (-ell - 1) % 7 and fc.det == ell % 7


def test_empirical_density_small(spec7):
    est = empirical_density(spec7, 10)
    assert (est.omega_count, est.prime_count, est.fraction) == (1, 3, Fraction(1, 3))
    assert est.target == Fraction(1, 9)
    with pytest.raises(InvalidParameter):
        empirical_density(spec7, 1)


def test_empirical_density_requires_surjectivity():
    spec = ResidualRepSpec(7, 11, CURVE_11A1)
    with pytest.raises(InvalidParameter):
        empirical_density(spec, 100)
    assert empirical_density(spec, 100, require_surjective=False).prime_count == 23


def test_table_source_unknowns():
    spec = ResidualRepSpec(7, 11, TraceTable.from_traces(7, {2: -2, 3: -1, 5: 1}))
    result = sieve_omega(spec, 30)
    assert result.primes == [5]
    # 17 and 19 need traces; 13 and 29 are decided by congruence alone
    assert result.unknown == [17, 19, 23]


def test_spec_validation():
    with pytest.raises(InvalidParameter):
        ResidualRepSpec(3, 11, CURVE_11A1)
    with pytest.raises(InvalidParameter):
        ResidualRepSpec(7, 14, CURVE_11A1)
    with pytest.raises(InvalidParameter):
        ResidualRepSpec(7, 11, TraceTable(5, {}))
    assert conductor_hypothesis_violations(ResidualRepSpec(7, 13 * 11, CURVE_11A1)) == [13]
