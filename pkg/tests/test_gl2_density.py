from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from selmer_stability.errors import InvalidParameter, ResourceLimit
from selmer_stability.gl2_density import (
    group_order,
    is_omega_class,
    omega_density_bruteforce,
    omega_density_closed_form,
)

from oracles import gl2_omega_by_eigenvalues, gl2_omega_count

# frozen from oracles.gl2_omega_count
ORACLE_COUNTS = {5: (60, 480), 7: (224, 2016)}


def test_small_examples():
    assert not is_omega_class(((1, 0), (0, 1)), 5)
    assert is_omega_class(((-2, 0), (0, -1)), 5)
    assert not is_omega_class(((-1, 0), (0, -1)), 5)


def test_singular_matrix_rejected():
    with pytest.raises(InvalidParameter):
        is_omega_class(((1, 2), (2, 4)), 5)


@pytest.mark.parametrize("p", [5, 7])
def test_counts_match_enumeration_oracle(p):
    rep = omega_density_bruteforce(p)
    assert (rep.matching_count, rep.group_order) == ORACLE_COUNTS[p]
    assert ORACLE_COUNTS[p] == gl2_omega_count(p)


def test_frozen_fractions():
    assert omega_density_bruteforce(5).exact_fraction == Fraction(1, 8)
    assert omega_density_bruteforce(7).exact_fraction == Fraction(1, 9)
    assert omega_density_closed_form(5) == Fraction(1, 8)
    assert omega_density_closed_form(7) == Fraction(1, 9)
    assert omega_density_closed_form(11) == Fraction(2, 25)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_bruteforce_equals_closed_form(p):
    rep = omega_density_bruteforce(p)
    assert rep.match
    assert rep.group_order == (p * p - 1) * (p * p - p) == group_order(p)
    # each qualifying class has size |G| / (p-1)^2
    assert rep.matching_count % (rep.group_order // (p - 1) ** 2) == 0
    assert rep.matching_count // (rep.group_order // (p - 1) ** 2) == p - 3


@pytest.mark.parametrize("p", [0, 1, 2, 3, 4, 9])
def test_bad_p(p):
    with pytest.raises(InvalidParameter):
        omega_density_bruteforce(p)


def test_resource_limit():
    with pytest.raises(ResourceLimit):
        omega_density_bruteforce(17)
    with pytest.raises(ResourceLimit):
        omega_density_bruteforce(7, max_p=5)


def test_csv_row():
    assert omega_density_bruteforce(5).csv_row() == [5, 480, 60, 1, 8, 1, 8, "true"]


quad = st.tuples(*[st.integers(0, 12)] * 4)


@given(st.sampled_from([5, 7, 11, 13]), quad, quad)
def test_agrees_with_eigenvalue_oracle_and_conjugation(p, mq, gq):
    m = ((mq[0] % p, mq[1] % p), (mq[2] % p, mq[3] % p))
    (a, b), (c, d) = g = ((gq[0] % p, gq[1] % p), (gq[2] % p, gq[3] % p))
    assume((m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p and (a * d - b * c) % p)
    expected = gl2_omega_by_eigenvalues(m, p)
    assert is_omega_class(m, p) == expected
    inv_det = pow(a * d - b * c, -1, p)
    gi = ((d * inv_det, -b * inv_det), (-c * inv_det, a * inv_det))

    def mul(x, y):
        return tuple(
            tuple(sum(x[i][k] * y[k][j] for k in range(2)) % p for j in range(2)) for i in range(2)
        )

    assert is_omega_class(mul(mul(g, m), gi), p) == expected
