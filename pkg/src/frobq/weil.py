"""Rank-1 discriminant modules, Gauss-sum variants, and the Weil representation.

The discriminant module D_k is (1/k)Z/Z for even k and (1/2k)Z/2Z for odd k,
with quadratic form Q(x) = k x^2 / 2 mod 1.  Matrix entries stay inside one
exact cyclotomic field; square roots of group orders are embedded via
quadratic Gauss sums, so closed-formula and generator-word values compare by
plain equality.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycloNumber, cyclo_e, i_power, kronecker, sqrt_rational
from .meta import MetaElement, st_word


class WeilError(ValueError):
    pass


class DiscModule:
    """Cyclic discriminant module attached to the rank-1 lattice of level k."""

    __slots__ = ("k", "den", "order")

    def __init__(self, k: int):
        if k == 0:
            raise WeilError("k must be nonzero")
        self.k = k
        if k % 2 == 0:
            self.den = abs(k)  # elements j/|k| mod 1
            self.order = abs(k)
        else:
            self.den = 2 * abs(k)  # elements j/(2|k|) mod 2
            self.order = 4 * abs(k)

    def elements(self):
        return range(self.order)

    def value(self, j: int) -> Fraction:
        """Representative of the class of index j."""
        return Fraction(j % self.order, self.den)

    def index_of(self, x) -> int:
        """Index of a rational point on the dual grid."""
        x = Fraction(x)
        j = x * self.den
        if j.denominator != 1:
            raise WeilError("%s is not on the 1/%d grid" % (x, self.den))
        return int(j) % self.order

    def q_value(self, j: int) -> Fraction:
        """Q(x) = k x^2 / 2 mod 1."""
        x = Fraction(j, self.den)
        return (Fraction(self.k) * x * x / 2) % 1

    def bilinear(self, j1: int, j2: int) -> Fraction:
        """B(x, y) = k x y mod 1."""
        return (Fraction(self.k * j1 * j2, self.den * self.den)) % 1

    def kernel(self, d: int):
        """D_k[d]: classes killed by multiplication by d."""
        return [j for j in self.elements() if (d * j) % self.order == 0]

    def image(self, d: int):
        """D_k[d]* = d D_k."""
        return sorted({(d * j) % self.order for j in self.elements()})

    def bullet(self, d: int):
        """D_k[d]^bullet: y with d k z^2/2 + k y z integral for all z in D_k[d]."""
        ker = self.kernel(d)
        out = []
        for j in self.elements():
            ok = True
            for z in ker:
                val = Fraction(d) * self.q_value_raw(z) + self.bilinear_raw(j, z)
                if val.denominator != 1:
                    ok = False
                    break
            if ok:
                out.append(j)
        return out

    def q_value_raw(self, j: int) -> Fraction:
        x = Fraction(j, self.den)
        return Fraction(self.k) * x * x / 2

    def bilinear_raw(self, j1: int, j2: int) -> Fraction:
        return Fraction(self.k * j1 * j2, self.den * self.den)


def d_subsets(k: int, d: int):
    """(kernel, image, bullet) of multiplication by d, with the coset property asserted."""
    D = DiscModule(k)
    ker = D.kernel(d)
    img = D.image(d)
    bul = D.bullet(d)
    assert len(bul) == len(img), "bullet and image sizes differ"
    if bul:
        y0 = bul[0]
        coset = sorted({(y0 + x) % D.order for x in img})
        assert coset == sorted(bul), "bullet set is not a coset of the image"
    return ker, img, bul


# ---------------------------------------------------------------------------
# Gauss-sum variants


def frak_g(k: int, b: int, d: int, t, method: str = "brute", a: int | None = None, c: int | None = None) -> CycloNumber:
    """|d|^{-1/2} sum over L_k/dL_k of e(b k (t+v)^2 / 2d), exactly.

    method="closed" uses the single-matrix closed form and needs completion
    data a, c with ad - bc = 1 and k | bc (even k) or 4k | bc (odd k).
    """
    if d == 0:
        raise WeilError("d must be nonzero")
    D = DiscModule(k)
    t = Fraction(t)
    if (t * D.den).denominator != 1:
        raise WeilError("t off the dual grid")
    if method == "brute":
        step = 1 if k % 2 == 0 else 2
        total = CycloNumber.zero()
        for idx in range(abs(d)):
            v = step * idx
            total = total + cyclo_e(Fraction(b * k, 2 * d) * (t + v) ** 2)
        return total * sqrt_rational(Fraction(1, abs(d)))
    if method != "closed":
        raise WeilError("unknown method %r" % (method,))
    if a is None or c is None or a * d - b * c != 1:
        raise WeilError("closed form needs a, c with ad - bc = 1")
    bc_mod = k if k % 2 == 0 else 4 * k
    if (b * c) % bc_mod != 0:
        raise WeilError("closed form needs %d | bc" % bc_mod)
    beta = k * t
    sgn_d = 1 if d > 0 else -1
    return (
        CycloNumber.from_rational(kronecker(sgn_d * k * b, abs(d)))
        * cyclo_e(Fraction(1 - abs(d), 8))
        * cyclo_e(Fraction(b * d, 2 * k) * (a * beta) ** 2)
    )


def scr_g(k: int, d: int, x) -> CycloNumber:
    """(|D_k| |D_k[d]|)^{-1/2} sum over D_k of e(d k y^2/2 + k x y), exactly."""
    D = DiscModule(k)
    jx = D.index_of(x) if not isinstance(x, int) else x % D.order
    total = CycloNumber.zero()
    for j in D.elements():
        total = total + cyclo_e(Fraction(d) * D.q_value_raw(j) + D.bilinear_raw(jx, j))
    norm = sqrt_rational(Fraction(1, D.order * len(D.kernel(d))))
    return total * norm


# ---------------------------------------------------------------------------
# the representation


class RhoMatrix:
    """Square matrix of exact cyclotomic entries indexed by discriminant classes."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.dim = len(self.rows)

    @staticmethod
    def identity(dim: int) -> "RhoMatrix":
        one, zero = CycloNumber.one(), CycloNumber.zero()
        return RhoMatrix([[one if i == j else zero for j in range(dim)] for i in range(dim)])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def mul(self, other: "RhoMatrix") -> "RhoMatrix":
        n = self.dim
        out = []
        bt = other.rows
        for i in range(n):
            row = []
            ai = self.rows[i]
            for j in range(n):
                s = CycloNumber.zero()
                for t in range(n):
                    if not ai[t].is_zero() and not bt[t][j].is_zero():
                        s = s + ai[t] * bt[t][j]
                row.append(s)
            out.append(row)
        return RhoMatrix(out)

    def scalar(self, c) -> "RhoMatrix":
        return RhoMatrix([[x * c for x in row] for row in self.rows])

    def __eq__(self, other):
        if not isinstance(other, RhoMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(self.rows[i][j] == other.rows[i][j] for i in range(self.dim) for j in range(self.dim))

    __hash__ = None

    def conj_transpose(self) -> "RhoMatrix":
        return RhoMatrix([[self.rows[j][i].conj() for j in range(self.dim)] for i in range(self.dim)])

    def is_identity(self) -> bool:
        return self == RhoMatrix.identity(self.dim)

    def __repr__(self):
        return "RhoMatrix(dim=%d)" % self.dim


def _weil_t_matrix(k: int) -> RhoMatrix:
    D = DiscModule(k)
    n = D.order
    zero = CycloNumber.zero()
    rows = [[zero] * n for _ in range(n)]
    for j in D.elements():
        rows[j][j] = cyclo_e(D.q_value_raw(j))
    return RhoMatrix(rows)


def _weil_s_matrix(k: int) -> RhoMatrix:
    D = DiscModule(k)
    n = D.order
    sgn = 1 if k > 0 else -1
    # sqrt(-sgn(k) i / |D_k|), principal: sqrt(-i) = e(-1/8), sqrt(i) = e(1/8)
    scalar = cyclo_e(Fraction(-sgn, 8)) * sqrt_rational(Fraction(1, n))
    rows = []
    for y in D.elements():
        row = []
        for x in D.elements():
            row.append(scalar * cyclo_e(-D.bilinear_raw(x, y)))
        rows.append(row)
    return RhoMatrix(rows)


_gen_cache: dict = {}


def weil_generators(k: int):
    if k not in _gen_cache:
        _gen_cache[k] = (_weil_t_matrix(k), _weil_s_matrix(k))
    return _gen_cache[k]


def weil_rho(k: int, g: MetaElement) -> RhoMatrix:
    """rho_{L_k}(g) by S/T word decomposition; an exact homomorphism on the double cover."""
    tmat, smat = weil_generators(k)
    word = st_word(g)
    D = DiscModule(k)

    def t_image(n):
        rows = [[CycloNumber.zero()] * D.order for _ in range(D.order)]
        for j in D.elements():
            rows[j][j] = cyclo_e(Fraction(n) * D.q_value_raw(j))
        return RhoMatrix(rows)

    out = word.evaluate(t_image, smat, RhoMatrix.identity(D.order), RhoMatrix.mul)
    if word.sign == -1:
        s4 = smat.mul(smat).mul(smat).mul(smat)  # rho of (I, -1)
        out = out.mul(s4)
    return out


def weil_coeff_closed(k: int, g: MetaElement, y, x) -> CycloNumber:
    """Entry (y, x) of rho_{L_k}(g~) by the closed Gauss-sum formula.

    Needs d != 0 and k | bc (even k) or 4k | bc (odd k); g must carry eps = +1.
    """
    if g.eps != 1:
        raise WeilError("closed formula is stated for the tilde lift")
    a, b, c, d = g.int_entries()
    if a * d - b * c != 1:
        raise WeilError("need determinant 1")
    if d == 0:
        raise WeilError("closed formula needs d != 0")
    bc_mod = k if k % 2 == 0 else 4 * k
    if (b * c) % bc_mod != 0:
        raise WeilError("closed formula needs %d | bc" % bc_mod)
    D = DiscModule(k)
    jy = D.index_of(y) if not isinstance(y, int) else y % D.order
    jx = D.index_of(x) if not isinstance(x, int) else x % D.order
    target = (a * jy - jx) % D.order
    if target not in set(D.bullet(c)):
        return CycloNumber.zero()
    sgn_d = 1 if d > 0 else -1
    phase = i_power((-((1 - sgn_d) // 2) * kronecker(c, -1)) % 4)  # (-i)^{(1-sgn d)/2 * (c/-1)}
    gg = frak_g(k, b, d, D.value(jy))
    ratio = sqrt_rational(Fraction(len(D.kernel(c)), D.order))
    scr = scr_g(k, -c * d, (jy - d * jx) % D.order)
    return phase * gg * ratio * scr
