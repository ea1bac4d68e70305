import random
from fractions import Fraction
from math import gcd

import pytest

from frobq.cyclo import (
    CycloNumber,
    classical_gauss_sum,
    cyclo_e,
    euler_phi,
    factorize,
    kronecker,
    sqrt_cyclo,
    sqrt_rational,
)


# -- definitional oracle for the Kronecker symbol ---------------------------


def _legendre(m, p):
    m %= p
    if m == 0:
        return 0
    # brute force over squares
    for x in range(1, p):
        if (x * x - m) % p == 0:
            return 1
    return -1


def kronecker_oracle(m, n):
    if n == 0:
        return 1 if m in (1, -1) else 0
    sign = 1
    if n < 0:
        sign = 1 if m >= 0 else -1
        n = -n
    out = sign
    for p, e in factorize(n).items() if n > 1 else {}.items():
        if p == 2:
            s = 0 if m % 2 == 0 else (-1) ** ((m * m - 1) // 8 % 2)
        else:
            s = _legendre(m, p)
        out *= s**e
    return out


def test_kronecker_paper_conventions():
    assert kronecker(5, 1) == 1
    assert kronecker(-1, 0) == 1
    assert kronecker(1, 0) == 1
    assert kronecker(7, 0) == 0
    assert kronecker(2, 3) == -1
    assert kronecker(3, 2) == -1  # (-1)^((9-1)/8)


def test_kronecker_matches_definitional_oracle():
    rng = random.Random(1)
    for _ in range(400):
        m = rng.randint(-60, 60)
        n = rng.randint(-60, 60)
        assert kronecker(m, n) == kronecker_oracle(m, n), (m, n)


def test_kronecker_periodicity():
    rng = random.Random(2)
    for _ in range(200):
        m = rng.randint(-40, 40)
        n = rng.randint(-50, 50)
        if m % 4 in (0, 1) and m != 0:
            assert kronecker(m, n) == kronecker(m, n + abs(m))
        if m % 4 == 2:
            assert kronecker(m, n) == kronecker(m, n + abs(4 * m))


# -- cyclotomic arithmetic ---------------------------------------------------


def test_cyclo_e_basics():
    assert cyclo_e(Fraction(1, 2)) == -1
    assert cyclo_e(Fraction(1, 3)) + cyclo_e(Fraction(2, 3)) == -1
    assert cyclo_e(Fraction(1, 8)).abs2() == 1
    assert cyclo_e(Fraction(5, 4)) == cyclo_e(Fraction(1, 4))


def _random_cyclo(rng, conductors=(1, 3, 4, 8, 12)):
    n = rng.choice(conductors)
    return CycloNumber(
        n,
        [rng.randint(-4, 4) for _ in range(euler_phi(n))],
        rng.randint(1, 5),
    )


def test_ring_axioms_randomized():
    rng = random.Random(3)
    for _ in range(120):
        a, b, c = (_random_cyclo(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_conj_involution_and_embed():
    rng = random.Random(4)
    for _ in range(60):
        a = _random_cyclo(rng)
        assert a.conj().conj() == a
        assert a.lift(24) == a  # equality across conductors
        assert a.lift(24).lift(48) == a


def test_inverse():
    rng = random.Random(5)
    count = 0
    while count < 40:
        a = _random_cyclo(rng)
        if a.is_zero():
            continue
        count += 1
        assert a * a.inv() == 1
    with pytest.raises(ZeroDivisionError):
        CycloNumber.zero().inv()


def test_roots_of_unity_have_unit_modulus():
    for b in range(1, 16):
        for a in range(b):
            if gcd(a, b) == 1:
                assert cyclo_e(Fraction(a, b)).abs2() == 1


def test_sqrt_cyclo_squares_back():
    for n in list(range(1, 31)) + [50, 60, 72]:
        s = sqrt_cyclo(n)
        assert s * s == n, n
    assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)
    s = sqrt_rational(Fraction(2, 3))
    assert s * s == Fraction(2, 3)


# -- classical Gauss sums ----------------------------------------------------


def test_gauss_sum_examples():
    assert classical_gauss_sum(1, 1) == 1
    # direct summation oracle for (1,4): 1 + i + 1 + i
    g4 = classical_gauss_sum(1, 4)
    assert g4 == 2 + 2 * cyclo_e(Fraction(1, 4))
    assert g4 == 2 * sqrt_cyclo(2) * cyclo_e(Fraction(1, 8))
    # (1,3): 1 + 2 e(1/3) = i sqrt(3)
    g3 = classical_gauss_sum(1, 3)
    assert g3 == 1 + 2 * cyclo_e(Fraction(1, 3))
    assert g3 == cyclo_e(Fraction(1, 4)) * sqrt_cyclo(3)


def test_gauss_sum_brute_equals_closed():
    for m in range(1, 61):
        for n in range(1, m + 1):
            if gcd(n, m) == 1:
                assert classical_gauss_sum(n, m, "brute") == classical_gauss_sum(n, m, "closed"), (n, m)


def test_gauss_sum_closed_precondition():
    with pytest.raises(Exception):
        classical_gauss_sum(2, 4, "closed")
    with pytest.raises(Exception):
        classical_gauss_sum(1, -3, "closed")
