"""The (floor(k/2)+1)-dimensional representation acting on the partition series vector.

Columns are indexed by the canonical beta set in increasing order; the
generator matrices reproduce the printed k = 2, 3, 4 examples exactly.  On
Gamma_0(k) every matrix is a generalized permutation: the index map t_beta
and the root-of-unity factor p_beta are implemented in closed form and used
as an oracle against generator-word products.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .cyclo import CycloNumber, cyclo_e, i_power, kronecker, sqrt_rational
from .frobgen import beta_set, lambda_reduce
from .meta import MetaElement, lift, st_word
from .weil import RhoMatrix, weil_rho


class SubgroupError(ValueError):
    pass


def in_gamma0(g, n: int) -> bool:
    a, b, c, d = g
    return (a * d - b * c == 1) and c % n == 0


def rho_k_generators(k: int):
    """Exact matrices of the T and S generators, dimension floor(k/2)+1."""
    betas = beta_set(k)
    dim = len(betas)
    zero = CycloNumber.zero()
    tmat = [[zero] * dim for _ in range(dim)]
    for i, b in enumerate(betas):
        tmat[i][i] = cyclo_e(Fraction(k, 12) - b * b / (2 * k))
    pref = cyclo_e(Fraction(2 * k + 1, 8)) * sqrt_rational(Fraction(4, k))
    smat = []
    for b in betas:
        row = []
        ib = i_power(int(2 * b) % 4)
        for bp in betas:
            mu = Fraction(1, 2) if bp / k in (0, Fraction(1, 2)) else Fraction(1)
            theta = bp * (b + Fraction(k, 2)) / k
            cos2 = cyclo_e(theta) + cyclo_e(-theta)  # 2 cos(2 pi theta)
            row.append(pref * ib * mu * cos2 * Fraction(1, 2))
        smat.append(row)
    return RhoMatrix(tmat), RhoMatrix(smat)


def rho_k_of(k: int, g: MetaElement) -> RhoMatrix:
    """Word-product value of the representation at a lifted SL2(Z) element."""
    tmat, smat = rho_k_generators(k)
    betas = beta_set(k)
    dim = len(betas)
    word = st_word(g)

    def t_image(n):
        zero = CycloNumber.zero()
        rows = [[zero] * dim for _ in range(dim)]
        for i, b in enumerate(betas):
            rows[i][i] = cyclo_e((Fraction(k, 12) - b * b / (2 * k)) * n)
        return RhoMatrix(rows)

    out = word.evaluate(t_image, smat, RhoMatrix.identity(dim), RhoMatrix.mul)
    if word.sign == -1:
        s4 = smat.mul(smat).mul(smat).mul(smat)
        out = out.mul(s4)
    return out


# ---------------------------------------------------------------------------
# closed Gamma_0(k) law


def lambda_k(k: int, beta) -> Fraction:
    return lambda_reduce(k, beta)


def t_beta(k: int, beta, gamma) -> Fraction:
    """Index of the single surviving component under a Gamma_0(k) transformation."""
    a, b, c, d = gamma
    if not in_gamma0(gamma, k):
        raise SubgroupError("matrix not in Gamma_0(%d)" % k)
    beta = Fraction(beta)
    if k % 2 == 0:
        if c % (2 * k) == 0:
            return lambda_reduce(k, a * beta)
        return lambda_reduce(k, a * beta - Fraction(k, 2))
    if a % 2 != 0:
        return lambda_reduce(k, a * beta)
    return lambda_reduce(k, a * beta - Fraction(k, 2))


def p_beta(k: int, beta, gamma) -> CycloNumber:
    """Root-of-unity factor attached to the Gamma_0(k) permutation action."""
    a, b, c, d = gamma
    if not in_gamma0(gamma, k):
        raise SubgroupError("matrix not in Gamma_0(%d)" % k)
    beta = Fraction(beta)
    if c % 2 == 0:
        sgn_d = 1 if d > 0 else -1
        out = CycloNumber.from_rational(kronecker(sgn_d * k * b, abs(d)))
        out = out * cyclo_e(Fraction(abs(d) - 1, 8))
        out = out * i_power((((1 - sgn_d) // 2) * kronecker(c, -1)) % 4)
        expo = Fraction(k * (2 * a * c - c * d + 2 * b * d - 2 * b * d * c * c), 24) - Fraction(b * d, 2 * k) * (a * beta) ** 2
        return out * cyclo_e(expo)
    if k % 2 == 0:
        raise SubgroupError("odd c is impossible for even k in Gamma_0(k)")
    s = 1 if c > 0 else -1
    if a % 2 != 0:
        nxt = (a, b, c - s * k * a, d - s * k * b)
        assert nxt[2] % 2 == 0, "reduction must land in the even-c case"
        return cyclo_e(Fraction(s * k * k, 24)) * p_beta(k, beta, nxt)
    a1 = a + c
    b1 = b + d
    c1 = -s * k * a + (1 - s * k) * c
    d1 = -s * k * b + (1 - s * k) * d
    assert c1 % 2 == 0, "reduction must land in the even-c case"
    expo = -Fraction(k, 12) + beta * beta / (2 * k) + Fraction(s * k * k, 24)
    return cyclo_e(expo) * p_beta(k, beta, (a1, b1, c1, d1))


def gamma0k_matrix(k: int, gamma) -> RhoMatrix:
    """Generalized permutation matrix of a Gamma_0(k) element from the closed law."""
    betas = beta_set(k)
    dim = len(betas)
    zero = CycloNumber.zero()
    rows = [[zero] * dim for _ in range(dim)]
    for i, b in enumerate(betas):
        bp = t_beta(k, b, gamma)
        rows[i][betas.index(bp)] = p_beta(k, b, gamma)
    return RhoMatrix(rows)


def equivalence_classes(k: int):
    """Partition of the canonical beta set by gcd(2 beta, k)."""
    classes: dict = {}
    for b in beta_set(k):
        key = gcd(int(2 * b), k)
        classes.setdefault(key, []).append(b)
    return sorted(classes.values(), key=min)


# ---------------------------------------------------------------------------
# quotient multiplier and the k = 3 mixing law


def quotient_multiplier(k: int, beta, n: int, gamma):
    """(beta', multiplier) for the action on f(tau)/f(N tau), gamma in Gamma_0(N lcm(2,k)).

    For even k the scale N must be odd.  For N = p^2 with p >= 5 the value
    collapses to e((2 beta)^2 (p^2-1) b d a^2 / (8k)).
    """
    a, b, c, d = gamma
    level = n * lcm(2, k)
    if not in_gamma0(gamma, level):
        raise SubgroupError("matrix not in Gamma_0(%d)" % level)
    if k % 2 == 0 and n % 2 == 0:
        raise SubgroupError("even k needs odd N")
    beta = Fraction(beta)
    bp = t_beta(k, beta, gamma)
    out = CycloNumber.from_rational(kronecker(n, abs(d)))
    expo = Fraction((n - 1) * k, 24) * (Fraction((2 * a - d) * c, n) - 2 * b * d * (1 + Fraction(c * c, n)))
    expo += Fraction(n - 1, 1) * Fraction(b * d, 2 * k) * (a * beta) ** 2
    return bp, out * cyclo_e(expo)


def gamma026_action(gamma, s: int = 0):
    """Coefficients on the two k = 3 components under an element of Gamma_0^0(2,6) times T^s."""
    a, b, c, d = gamma
    if a * d - b * c != 1 or c % 2 != 0 or b % 6 != 0:
        raise SubgroupError("matrix not in Gamma_0^0(2,6)")
    sgn_d = 1 if d > 0 else -1
    alpha = CycloNumber.from_rational(kronecker(sgn_d * 3 * b, abs(d)))
    alpha = alpha * cyclo_e(Fraction(abs(d) - 1, 8))
    alpha = alpha * i_power((((1 - sgn_d) // 2) * kronecker(c, -1)) % 4)
    alpha = alpha * cyclo_e(Fraction((2 * b + c) * d, 8) - Fraction(a * b, 24))
    z3 = cyclo_e(Fraction((c * d // 2) % 3, 3))
    c_half = cyclo_e(Fraction(5 * s, 24)) * (2 + z3) * Fraction(1, 3)
    c_three = cyclo_e(Fraction(-s, 8)) * (1 - z3) * Fraction(1, 3)
    return alpha * c_half, alpha * c_three


# ---------------------------------------------------------------------------
# bridge to the Weil representation on Gamma_0(2)


def _mu(k: int, bp: Fraction) -> Fraction:
    return Fraction(1, 2) if bp / k in (0, Fraction(1, 2)) else Fraction(1)


def rho_weil_bridge_check(k: int, gamma, beta, beta_p) -> bool:
    """Entrywise check of the Gamma_0(2) formula linking the two representations."""
    from .meta import chi_eta
    from .weil import DiscModule

    a, b, c, d = gamma
    if a * d - b * c != 1 or c % 2 != 0:
        raise SubgroupError("matrix not in Gamma_0(2)")
    g = lift(gamma)
    beta, beta_p = Fraction(beta), Fraction(beta_p)
    betas = beta_set(k)
    lhs = rho_k_of(k, g)[betas.index(beta), betas.index(beta_p)]
    D = DiscModule(k)
    wr = weil_rho(k, g)

    def star(y, x):
        return wr[D.index_of(y), D.index_of(x)].conj()

    pref = i_power((-k * (c // 2)) % 4) * chi_eta(g) ** (2 * k) * _mu(k, beta_p)
    y = beta / k
    if k % 2 == 0:
        rhs = pref * (star(y, beta_p / k) + star(y, -beta_p / k))
    else:
        sign = -1 if ((c * (d - 1) // 4) + (c + d - 1) // 2) % 2 else 1
        rhs = pref * sign * (
            star(y, beta_p / k)
            + star(y, -beta_p / k)
            + star(y, (k + beta_p) / k)
            + star(y, -(k + beta_p) / k)
        )
    return lhs == rhs
