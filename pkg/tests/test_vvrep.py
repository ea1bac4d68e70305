import random
from fractions import Fraction
from math import gcd

import pytest

from frobq.cyclo import CycloNumber, cyclo_e, sqrt_rational
from frobq.frobgen import beta_set
from frobq.meta import S_TILDE, lift, meta_compose, t_power
from frobq.vvrep import (
    SubgroupError,
    equivalence_classes,
    gamma026_action,
    gamma0k_matrix,
    lambda_k,
    p_beta,
    quotient_multiplier,
    rho_k_generators,
    rho_k_of,
    rho_weil_bridge_check,
    t_beta,
)
from frobq.weil import RhoMatrix


def _scaled(matrix_of_ints, scalar):
    return RhoMatrix([[scalar * x for x in row] for row in matrix_of_ints])


def printed_example_matrices():
    """The printed generator matrices for k = 2, 3, 4."""
    e = cyclo_e
    tk2 = RhoMatrix([[e(Fraction(1, 6)), 0 * e(0)], [0 * e(0), e(Fraction(-1, 12))]])
    sk2 = _scaled([[-1, 1], [1, 1]], e(Fraction(1, 8)) * sqrt_rational(Fraction(1, 2)))
    tk3 = RhoMatrix([[e(Fraction(5, 24)), 0 * e(0)], [0 * e(0), e(Fraction(-1, 8))]])
    sk3 = _scaled([[-1, 1], [2, 1]], e(Fraction(1, 8)) * sqrt_rational(Fraction(1, 3)))
    z = 0 * e(0)
    tk4 = RhoMatrix(
        [
            [e(Fraction(1, 3)), z, z],
            [z, e(Fraction(5, 24)), z],
            [z, z, e(Fraction(-1, 6))],
        ]
    )
    sk4 = _scaled([[1, -2, 1], [-1, 0, 1], [1, 2, 1]], e(Fraction(1, 8)) * Fraction(1, 2))
    return {2: (tk2, sk2), 3: (tk3, sk3), 4: (tk4, sk4)}


def test_example_generator_matrices_exact():
    printed = printed_example_matrices()
    for k in (2, 3, 4):
        tmat, smat = rho_k_generators(k)
        assert tmat == printed[k][0], k
        assert smat == printed[k][1], k


def test_rho_identity_and_homomorphism():
    rng = random.Random(30)
    for k in (2, 3, 4, 5, 6):
        assert rho_k_of(k, lift((1, 0, 0, 1))).is_identity()
        for _ in range(4):
            g1 = lift((1, 0, 0, 1))
            for _ in range(rng.randint(1, 6)):
                g1 = meta_compose(g1, meta_compose(t_power(rng.randint(-3, 3)), S_TILDE))
            g2 = meta_compose(S_TILDE, t_power(rng.randint(-3, 3)))
            assert rho_k_of(k, meta_compose(g1, g2)) == rho_k_of(k, g1).mul(rho_k_of(k, g2))


def test_parabolic_scalar_values():
    # odd k: (1 0; k 1) acts by e(k^2/24); even k: (1 0; 2k 1) acts by e(k^2/12)
    for k in (3, 5):
        m = rho_k_of(k, lift((1, 0, k, 1)))
        expect = RhoMatrix.identity(k // 2 + 1).scalar(cyclo_e(Fraction(k * k, 24)))
        assert m == expect, k
    for k in (2, 4):
        m = rho_k_of(k, lift((1, 0, 2 * k, 1)))
        expect = RhoMatrix.identity(k // 2 + 1).scalar(cyclo_e(Fraction(k * k, 12)))
        assert m == expect, k


def test_lambda_examples():
    assert lambda_k(2, -1) == 1
    assert lambda_k(3, Fraction(5, 2)) == Fraction(1, 2)
    for k in (2, 3, 4, 7):
        for b in beta_set(k):
            assert lambda_k(k, k - b) == lambda_k(k, b)


def _random_gamma0k(rng, k, cmax=6):
    while True:
        c = k * rng.randint(-cmax, cmax)
        d = rng.randint(-40, 40)
        if gcd(c, d) != 1:
            continue
        # solve a d - b c = 1 for integers
        if c == 0:
            if abs(d) != 1:
                continue
            a = d
            b = rng.randint(-8, 8) * d
            return (a, b, c, d)
        for a in range(-60, 61):
            if (a * d - 1) % c == 0:
                return (a, (a * d - 1) // c, c, d)


def test_t_beta_examples_and_orbits():
    assert t_beta(2, 1, (27, 7, 50, 13)) == 0
    # even k with 2k | c and a = 1 mod 2k fixes beta
    assert t_beta(4, 1, (1, 0, 8, 1)) == 1
    rng = random.Random(31)
    for k in (2, 3, 4, 6, 9, 12):
        for b in beta_set(k):
            orbit = {b}
            for _ in range(200):
                g = _random_gamma0k(rng, k)
                orbit.add(t_beta(k, b, g))
            expect = {bp for bp in beta_set(k) if gcd(int(2 * bp), k) == gcd(int(2 * b), k)}
            assert orbit == expect, (k, b)


def test_p_beta_identity_and_root_of_unity():
    assert p_beta(3, Fraction(1, 2), (1, 0, 0, 1)) == 1
    rng = random.Random(32)
    for k in (2, 3, 5):
        for _ in range(10):
            g = _random_gamma0k(rng, k)
            val = p_beta(k, beta_set(k)[0], g)
            assert val.abs2() == 1
            # finite order at most 24k: check via exponentiation
            assert val ** (24 * k) == 1 or val ** (48 * k) == 1, (k, g)


def test_closed_law_matches_word_products_50_samples():
    rng = random.Random(33)
    for k in (2, 3, 4, 6):
        for _ in range(13):
            g = _random_gamma0k(rng, k, cmax=4)
            closed = gamma0k_matrix(k, g)
            word = rho_k_of(k, lift(g))
            assert closed == word, (k, g)


def test_generalized_permutation_shape():
    rng = random.Random(34)
    for k in (2, 3, 4, 6):
        betas = beta_set(k)
        for _ in range(5):
            g = _random_gamma0k(rng, k)
            m = rho_k_of(k, lift(g))
            for i, b in enumerate(betas):
                bp = t_beta(k, b, g)
                for j, b2 in enumerate(betas):
                    if b2 == bp:
                        assert m[i, j] == p_beta(k, b, g)
                    else:
                        assert m[i, j].is_zero()


def test_equivalence_classes_table():
    # printed table rows, stated in doubled values for odd k
    table = {
        1: [[1]],
        2: [[0, 1]],
        3: [[1], [3]],
        4: [[0, 2], [1]],
        5: [[1, 3], [5]],
        6: [[0, 3], [1, 2]],
        7: [[1, 3, 5], [7]],
        8: [[0, 4], [1, 3], [2]],
        9: [[1, 5, 7], [3], [9]],
        10: [[0, 5], [1, 2, 3, 4]],
        11: [[1, 3, 5, 7, 9], [11]],
        12: [[0, 6], [1, 5], [2, 4], [3]],
        13: [[1, 3, 5, 7, 9, 11], [13]],
        14: [[0, 7], [1, 2, 3, 4, 5, 6]],
    }
    for k, want in table.items():
        got = equivalence_classes(k)
        if k % 2 == 0:
            norm = sorted(sorted(int(b) for b in cls) for cls in got)
            assert norm == sorted(want), k
        else:
            norm = sorted(sorted(int(2 * b) for b in cls) for cls in got)
            assert norm == sorted(want), k


def test_quotient_multiplier_b0_and_p2():
    # b = 0 kills both exponentials up to the Kronecker factor
    bp, mult = quotient_multiplier(2, 1, 25, (1, 0, 50, 1))
    assert bp == 0 and mult == 1
    # p^2 reduction: multiplier equals e((2b)^2 (p^2-1) b d a^2 / 8k)
    rng = random.Random(35)
    for k, p in ((2, 5), (3, 5), (4, 7)):
        lev = p * p * (2 * k if k % 2 == 0 else 2 * k)  # Gamma_0(N lcm(2,k)), N = p^2
        count = 0
        while count < 6:
            g = _random_gamma0k(rng, lev, cmax=2)
            if g[2] == 0:
                continue
            count += 1
            for beta in beta_set(k):
                bp, mult = quotient_multiplier(k, beta, p * p, g)
                a, b, c, d = g
                expect = cyclo_e(Fraction((2 * beta) ** 2 * (p * p - 1) * b * d * a * a, 8 * k))
                assert mult == expect, (k, p, beta, g)
                assert bp == t_beta(k, beta, g)


def test_quotient_multiplier_consistency_via_double_application():
    # multiplier equals p_beta(gamma) / p_beta(gamma conjugated by diag(N, 1))
    rng = random.Random(36)
    for k, n in ((2, 5), (3, 5), (2, 3), (3, 3), (4, 3), (5, 5)):
        lev = n * (2 * k if k % 2 == 0 else 2 * k)
        count = 0
        while count < 5:
            g = _random_gamma0k(rng, lev, cmax=2)
            a, b, c, d = g
            count += 1
            bp, mult = quotient_multiplier(k, beta_set(k)[-1], n, g)
            beta = beta_set(k)[-1]
            inner = (a, b * n, c // n, d)
            ratio = p_beta(k, beta, g) * p_beta(k, beta, inner).inv()
            assert mult == ratio, (k, n, g)
            assert t_beta(k, beta, inner) == bp


def test_quotient_multiplier_preconditions():
    with pytest.raises(SubgroupError):
        quotient_multiplier(2, 1, 2, (1, 0, 8, 1))
    with pytest.raises(SubgroupError):
        quotient_multiplier(2, 1, 5, (1, 1, 2, 3))


def test_gamma026_printed_examples():
    z3 = cyclo_e(Fraction(1, 3))
    i = cyclo_e(Fraction(1, 4))
    c_half, c_three = gamma026_action((1, 0, 50, 1))
    assert c_half == i * (2 + z3) * Fraction(1, 3)
    assert c_three == i * (1 - z3) * Fraction(1, 3)
    c_half, c_three = gamma026_action((1, 0, 100, 1))
    assert c_half == -(2 + z3 * z3) * Fraction(1, 3)
    assert c_three == -(1 - z3 * z3) * Fraction(1, 3)


def test_gamma026_degenerates_on_gamma03():
    rng = random.Random(37)
    count = 0
    while count < 8:
        g = _random_gamma0k(rng, 6, cmax=4)
        a, b, c, d = g
        if b % 6 != 0:
            continue
        count += 1
        c_half, c_three = gamma026_action(g)
        if c % 3 == 0:
            bp = t_beta(3, Fraction(1, 2), g)
            pb = p_beta(3, Fraction(1, 2), g)
            if bp == Fraction(1, 2):
                assert c_half == pb and c_three.is_zero()
            else:
                assert c_three == pb and c_half.is_zero()


def test_gamma026_matches_word_route():
    # coefficients must agree with the generator-word matrix row of beta = 1/2
    rng = random.Random(38)
    betas = beta_set(3)
    count = 0
    while count < 8:
        g = _random_gamma0k(rng, 2, cmax=6)
        a, b, c, d = g
        if b % 6 != 0:
            continue
        count += 1
        for s in (0, 1, 3):
            m = rho_k_of(3, meta_compose(lift(g), t_power(s)))
            c_half, c_three = gamma026_action(g, s)
            assert m[0, 0] == c_half and m[0, 1] == c_three, (g, s)


def test_rho_weil_bridge():
    rng = random.Random(39)
    for k in (2, 3):
        count = 0
        while count < (30 if k == 2 else 12):
            g = _random_gamma0k(rng, 2, cmax=5)
            count += 1
            for beta in beta_set(k):
                for beta_p in beta_set(k):
                    assert rho_weil_bridge_check(k, g, beta, beta_p), (k, g, beta, beta_p)


def test_kernel_witness_gamma_24k():
    # elements of Gamma(24k) act as +-identity; the sign is absorbed by the eps choice
    rng = random.Random(40)
    for k in (2, 3):
        n = 24 * k
        ident = RhoMatrix.identity(k // 2 + 1)
        for _ in range(10):
            # random word in the two parabolic generators of a subgroup of Gamma(24k)
            prod = lift((1, 0, 0, 1))
            for _ in range(rng.randint(1, 4)):
                if rng.random() < 0.5:
                    prod = meta_compose(prod, lift((1, n * rng.randint(-2, 2), 0, 1)))
                else:
                    prod = meta_compose(prod, lift((1, 0, n * rng.randint(-2, 2), 1)))
            a, b, c, d = prod.int_entries()
            assert a % n == 1 and d % n == 1 and b % n == 0 and c % n == 0
            m = rho_k_of(k, prod)
            assert m == ident or m == ident.scalar(CycloNumber.from_rational(-1)), (k, prod)
