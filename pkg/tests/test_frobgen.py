from fractions import Fraction
from math import comb

import pytest

from frobq.frobgen import (
    BetaError,
    beta_set,
    cpsi,
    cpsi3_closed,
    cpsi_coefficient,
    cpsi_mod,
    f_kbeta,
    f_kbeta_from_h,
    h_component,
    lambda_reduce,
    theta_halfshift_power,
)


def test_beta_set_sizes():
    assert beta_set(2) == [0, 1]
    assert beta_set(3) == [Fraction(1, 2), Fraction(3, 2)]
    for k in range(1, 15):
        assert len(beta_set(k)) == k // 2 + 1


def test_theta_power_low_terms():
    # k=1: lowest q-exponent q^{1/8} with coefficient -1 at zeta^{+-1/2}
    t1 = theta_halfshift_power(1, 2)
    assert t1.terms[(1, 1)] == -1
    assert t1.terms[(1, -1)] == -1
    # k=2: zeta^0 q^{1/4} coefficient 2 (pairs n = +-1/2)
    t2 = theta_halfshift_power(2, 2)
    assert t2.terms[(2, 0)] == 2


def test_theta_zeta_one_specialization():
    # summing the zeta-coefficients of the single theta factor gives the
    # classical identity sum_{n in 1/2+Z} q^{n^2/2} = 2 eta(2 tau)^2 / eta(tau)
    from frobq.qseries import FracQSeries, eta_quotient

    order = 40
    t1 = theta_halfshift_power(1, order)
    collapsed = {}
    for (e, w), c in t1.terms.items():
        collapsed[e] = collapsed.get(e, 0) - c  # factor itself is -theta at z = 0
    lhs = FracQSeries(8, collapsed, 8 * order)
    rhs = 2 * eta_quotient([(2, 2), (1, -1)], 24 * order)
    assert lhs.same_series(rhs)


def test_cpsi_constant_term_is_binomial():
    # c(0) equals the zeta^(beta - k/2) coefficient of (1 + 1/zeta)^k
    for k in range(1, 9):
        for beta in beta_set(k):
            expect = comb(k, int(beta + Fraction(k, 2)))
            assert cpsi_coefficient(k, beta, 0) == expect, (k, beta)


def test_cpsi_2_1_values():
    assert cpsi_coefficient(2, 1, 0) == 1
    assert cpsi_coefficient(3, Fraction(1, 2), 0) == 3
    # Andrews: cphi_2(5n+3) = 0 mod 5 at n=0
    assert cpsi_coefficient(2, 1, 3) % 5 == 0


def test_cpsi_symmetry_and_errors():
    a = cpsi(3, Fraction(1, 2), 25)
    assert a.same_series(cpsi(3, Fraction(-1, 2), 25))
    assert a.same_series(cpsi(3, Fraction(7, 2), 25))
    b = cpsi(4, 1, 25)
    assert b.same_series(cpsi(4, 3, 25))
    assert b.same_series(cpsi(4, -1, 25))
    with pytest.raises(BetaError):
        cpsi(2, Fraction(1, 2), 10)


def test_lambda_reduce():
    assert lambda_reduce(2, -1) == 1
    assert lambda_reduce(3, Fraction(5, 2)) == Fraction(1, 2)
    for k in (2, 3, 5, 8):
        for b in beta_set(k):
            assert lambda_reduce(k, k - b) == lambda_reduce(k, b)


def test_positivity_small_k():
    for k in range(1, 7):
        for beta in beta_set(k):
            f = cpsi(k, beta, 50)
            for n in range(50):
                c = f.coeff_at(n)
                assert c.denominator == 1 and c >= 0, (k, beta, n)


def test_repcount_direct_values():
    from frobq.frobgen import repcount

    assert repcount(2, 1, -1) == 2  # (-1,0), (0,-1)
    assert repcount(2, 2, 0) == 2  # (1,-1), (-1,1)
    assert repcount(3, 3, 1) == 3  # permutations of (1,1,-1)
    assert repcount(3, 3, 3) == 1
    assert repcount(2, Fraction(1, 2), 0) == 0
    assert repcount(2, 5, 4) == 0  # r^2 > k m
    # brute-force oracle on a window
    for m in range(8):
        for r in range(-4, 5):
            brute = sum(
                1
                for x in range(-3, 4)
                for y in range(-3, 4)
                if x * x + y * y == m and x + y == r
            )
            assert repcount(2, m, r) == brute, (m, r)


def test_h_symmetry_and_vanishing():
    h1 = h_component(3, Fraction(1, 6), 40)
    h2 = h_component(3, Fraction(5, 6), 40)
    assert h1.same_series(h2)
    # k odd with integer beta: h vanishes
    assert h_component(3, Fraction(2, 6), 30).is_zero()
    assert h_component(5, Fraction(0, 1), 20).is_zero()
    hp = h_component(4, Fraction(1, 4), 30)
    assert hp.same_series(h_component(4, Fraction(5, 4), 30))


def test_f_kbeta_leading_terms():
    f20 = f_kbeta(2, 0, 30)
    assert f20.valuation() == Fraction(1, 6)
    assert f20.coeff_at(Fraction(1, 6)) == 2
    f33 = f_kbeta(3, Fraction(3, 2), 30)
    assert f33.valuation() == Fraction(-1, 8)


def test_jacobi_route_equals_lattice_route():
    for k in (1, 2, 3, 4):
        for beta in beta_set(k):
            a = f_kbeta(k, beta, 60)
            b = f_kbeta_from_h(k, beta, 60)
            assert a.same_series(b), (k, beta)


def test_cpsi3_closed_forms_match():
    for beta in (Fraction(1, 2), Fraction(3, 2)):
        closed = cpsi3_closed(beta, 100)
        direct = cpsi(3, beta, 100)
        assert closed.same_series(direct), beta
    assert cpsi3_closed(Fraction(1, 2), 5).coeff_at(0) == 3
    assert cpsi3_closed(Fraction(3, 2), 5).coeff_at(0) == 1
    with pytest.raises(BetaError):
        cpsi3_closed(Fraction(5, 2), 10)


def test_fast_mod_engines_match_exact():
    order = 50
    for k, beta in [
        (2, 0),
        (2, 1),
        (3, Fraction(1, 2)),
        (3, Fraction(3, 2)),
        (4, 0),
        (4, 1),
        (4, 2),
        (6, 0),
        (6, 1),
        (6, 2),
        (6, 3),
    ]:
        exact = cpsi(k, beta, order)
        arr = cpsi_mod(k, beta, order, None)
        got = [int(arr[n]) for n in range(order)]
        want = [int(exact.coeff_at(n)) for n in range(order)]
        assert got == want, (k, beta)
        m = 25
        arr_m = cpsi_mod(k, beta, order, m)
        assert [int(x) % m for x in got] == [int(x) % m for x in arr_m]
