"""Group-side U-operator machinery: residue bijections, conjugated matrices, commutation hypotheses."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .meta import AlgebraElement, MetaElement


class HeckeError(ValueError):
    pass


class RepSet:
    """Complete set of representatives of Z/mZ, kept in the given order."""

    __slots__ = ("m", "reps")

    def __init__(self, m: int, reps):
        reps = [int(x) for x in reps]
        if len(reps) != m or len({x % m for x in reps}) != m:
            raise HeckeError("not a complete residue system mod %d" % m)
        self.m = m
        self.reps = tuple(reps)

    @staticmethod
    def scaled(m: int, step: int) -> "RepSet":
        """{0, step, ..., (m-1) step}; needs gcd(step, m) = 1."""
        if gcd(step, m) != 1:
            raise HeckeError("step %d is not invertible mod %d" % (step, m))
        return RepSet(m, [step * i for i in range(m)])

    def find(self, residue: int) -> int:
        for x in self.reps:
            if (x - residue) % self.m == 0:
                return x
        raise HeckeError("unreachable: complete system miss")

    def __iter__(self):
        return iter(self.reps)


def _check_gamma0(gamma, m: int):
    a, b, c, d = gamma
    if a * d - b * c != 1:
        raise HeckeError("determinant must be 1")
    if c % m != 0:
        raise HeckeError("matrix not in Gamma_0(%d)" % m)
    return a, b, c, d


def sigma_r(gamma, rep_set: RepSet, x: int) -> int:
    """The unique y in R with (a + c x) y = b + d x mod m."""
    m = rep_set.m
    a, b, c, d = _check_gamma0(gamma, m)
    if x not in rep_set.reps:
        raise HeckeError("x not in the representative set")
    lhs = (a + c * x) % m
    inv = pow(lhs, -1, m)
    return rep_set.find(inv * (b + d * x) % m)


def sigma_map(gamma, rep_set: RepSet) -> dict:
    """x -> sigma(x) over the whole set, with bijectivity asserted."""
    out = {x: sigma_r(gamma, rep_set, x) for x in rep_set}
    if len(set(out.values())) != rep_set.m:
        raise HeckeError("sigma failed to be a bijection")
    return out


def c_m_r(gamma, m: int, rep_set: RepSet):
    """(1 0; 0 m) gamma (1 sigma(0); 0 m)^{-1}, an integral Gamma_0(m^2 ...) element."""
    a, b, c, d = _check_gamma0(gamma, m)
    if 0 not in rep_set.reps:
        raise HeckeError("representative set must contain 0")
    s0 = sigma_r(gamma, rep_set, 0)
    if (b - a * s0) % m != 0:
        raise HeckeError("non-integral conjugation: m does not divide b - a sigma(0)")
    return (a, (b - a * s0) // m, m * c, d - c * s0)


def c_m_r_algebra(elt: AlgebraElement, m: int, rep_set: RepSet) -> AlgebraElement:
    """Apply the conjugation matrix-wise over an algebra element's support."""
    out = {}
    for g, coeff in elt.terms.items():
        a, b, c, d = g.int_entries()
        ng = MetaElement(c_m_r((a, b, c, d), m, rep_set), g.eps)
        out[ng] = out[ng] + coeff if ng in out else coeff
    return AlgebraElement(out)


def hypothesis_matrices(gamma, m: int, rep_set: RepSet):
    """The three matrix families entering the period-2 commutation criterion.

    Returns (A_list, B_list, C_matrix): A over x in R built from sigma_gamma,
    B over x in R built from sigma of the conjugated matrix, and the single
    period-2 closure matrix C.  All are asserted to lie in SL2(Z).
    """
    a, b, c, d = _check_gamma0(gamma, m)
    if 0 not in rep_set.reps:
        raise HeckeError("representative set must contain 0")
    sg = sigma_map(gamma, rep_set)
    s0 = sg[0]
    cg = c_m_r(gamma, m, rep_set)
    sgc = sigma_map(cg, rep_set)
    s0c = sgc[0]

    def sl2(mat):
        a1, b1, c1, d1 = mat
        if any(isinstance(v, Fraction) and v.denominator != 1 for v in mat):
            raise HeckeError("non-integral hypothesis matrix: %r" % (mat,))
        mat = tuple(int(v) for v in mat)
        if mat[0] * mat[3] - mat[1] * mat[2] != 1:
            raise HeckeError("hypothesis matrix not in SL2(Z): %r" % (mat,))
        return mat

    a_list = []
    for x in rep_set:
        sp = sg[x] - s0
        num = x - a * (a + c * x) * sp
        if num % m != 0:
            raise HeckeError("A matrix has non-integral upper-right entry")
        a_list.append(sl2((1 + c * (a + c * x) * sp, num // m, m * c * c * sp, 1 - a * c * sp)))
    b_list = []
    ca, cb, cc, cd = cg
    for x in rep_set:
        sp = sgc[x] - s0c
        num = x - ca * (ca + cc * x) * sp
        if num % m != 0:
            raise HeckeError("B matrix has non-integral upper-right entry")
        b_list.append(sl2((1 + cc * (ca + cc * x) * sp, num // m, m * cc * cc * sp, 1 - ca * cc * sp)))
    # period-2 closure: y, z solve a y = b, a z = (b - a y)/m mod m
    y = rep_set.find(pow(a % m, -1, m) * b % m)
    z = rep_set.find(pow(a % m, -1, m) * ((b - a * y) // m) % m)
    w = y + m * z
    m2 = m * m
    if ((m2 - 1) * b * c + a * c * w) % m2 != 0 or ((m2 - 1) * a * b + a * a * w) % m2 != 0:
        raise HeckeError("C matrix has non-integral entries")
    c_mat = sl2(
        (
            1 + ((m2 - 1) * b * c + a * c * w) // m2,
            -((m2 - 1) * a * b + a * a * w) // m2,
            (m2 - 1) * c * d + c * c * w,
            1 - (m2 - 1) * b * c - a * c * w,
        )
    )
    return a_list, b_list, c_mat


def in_gamma1_star(mat, n: int, m24: int = 24) -> bool:
    a, b, c, d = mat
    return a % n == 1 % n and d % n == 1 % n and c % n == 0 and b % m24 == 0


def assert_hypotheses_in_gamma1_star(gamma, m: int, rep_set: RepSet, content: int):
    """Check every hypothesis matrix lies in Gamma_1^*(24 * content)."""
    a_list, b_list, c_mat = hypothesis_matrices(gamma, m, rep_set)
    n = 24 * content
    for mat in a_list + b_list + [c_mat]:
        if not in_gamma1_star(mat, n):
            raise HeckeError("hypothesis matrix %r escapes Gamma_1^*(%d)" % (mat, n))
    return a_list, b_list, c_mat


def u_p_prime_params(k: int, beta, p: int):
    """(r, r_e) controlling the twisted U_p operator for the component beta."""
    if p < 5 or any(p % q == 0 for q in (2, 3)):
        raise HeckeError("p must be a prime >= 5")
    # light primality check, desk scale
    f = 5
    while f * f <= p:
        if p % f == 0:
            raise HeckeError("p must be prime")
        f += 2
    beta = Fraction(beta)
    two_beta = 2 * beta
    if two_beta.denominator != 1:
        raise HeckeError("beta must be a half-integer")
    num = int(two_beta) ** 2 * (p * p - 1) // 8
    r = k // gcd(k, num)
    return r, lcm(2, r)
