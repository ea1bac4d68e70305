"""Double cover of GL+(2, Q): cocycle composition, S/T words, multiplier characters.

Elements are pairs (M, eps) with det M > 0 and eps = +-1; the composition sign
follows the three-case table of the square-root cocycle.  The cyclotomic group
algebra of finite formal sums lives here too, together with the eta multiplier
chi_eta, the half-shifted theta multiplier chi_k, and the Heisenberg character
values it needs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .cyclo import CycloNumber, cyclo_e, i_power, kronecker


class MetaError(ValueError):
    pass


def _frac4(matrix):
    a, b, c, d = (Fraction(x) for x in matrix)
    return (a, b, c, d)


class MetaElement:
    """Lifted matrix (M, eps) in the metaplectic double cover."""

    __slots__ = ("mat", "eps")

    def __init__(self, matrix, eps: int = 1):
        mat = _frac4(matrix)
        a, b, c, d = mat
        if a * d - b * c <= 0:
            raise MetaError("matrix must have positive determinant")
        if eps not in (1, -1):
            raise MetaError("eps must be +1 or -1")
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "eps", eps)

    def __setattr__(self, *a):
        raise AttributeError("MetaElement is immutable")

    @property
    def a(self):
        return self.mat[0]

    @property
    def b(self):
        return self.mat[1]

    @property
    def c(self):
        return self.mat[2]

    @property
    def d(self):
        return self.mat[3]

    def det(self):
        return self.a * self.d - self.b * self.c

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.mat)

    def int_entries(self):
        if not self.is_integral():
            raise MetaError("matrix is not integral")
        return tuple(int(x) for x in self.mat)

    def __eq__(self, other):
        if not isinstance(other, MetaElement):
            return NotImplemented
        return self.mat == other.mat and self.eps == other.eps

    def __hash__(self):
        return hash((self.mat, self.eps))

    def __repr__(self):
        a, b, c, d = self.mat
        return "Meta[(%s %s; %s %s), %+d]" % (a, b, c, d, self.eps)


def lift(matrix) -> MetaElement:
    """Tilde lift (M, +1)."""
    return MetaElement(matrix, 1)


def cocycle_sign(m1, m2) -> int:
    """Sign sigma(g1, g2) of the square-root cocycle, by the three-case table."""
    a1, b1, c1, d1 = _frac4(m1)
    a2, b2, c2, d2 = _frac4(m2)
    c3 = c1 * a2 + d1 * c2
    d3 = c1 * b2 + d1 * d2
    if c1 == 0 and c2 == 0 and d1 < 0 and d2 < 0:
        return -1
    if c1 >= 0 and c2 >= 0 and c3 < 0:
        return -1
    if c1 < 0 and c2 < 0 and c3 >= 0:
        return -1
    return 1


def meta_compose(g1: MetaElement, g2: MetaElement) -> MetaElement:
    a1, b1, c1, d1 = g1.mat
    a2, b2, c2, d2 = g2.mat
    prod = (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )
    return MetaElement(prod, g1.eps * g2.eps * cocycle_sign(g1.mat, g2.mat))


def meta_invert(g: MetaElement) -> MetaElement:
    a, b, c, d = g.mat
    det = a * d - b * c
    inv_mat = (d / det, -b / det, -c / det, a / det)
    eps = g.eps * cocycle_sign(g.mat, inv_mat)
    return MetaElement(inv_mat, eps)


IDENTITY = lift((1, 0, 0, 1))
T_TILDE = lift((1, 1, 0, 1))
S_TILDE = lift((0, -1, 1, 0))


def t_power(n: int) -> MetaElement:
    return MetaElement((1, n, 0, 1), 1)


# ---------------------------------------------------------------------------
# S/T words


class STWord:
    """Word in T~ powers and S~ with trailing sign, reproducing a lifted element exactly."""

    __slots__ = ("factors", "sign")

    def __init__(self, factors, sign: int):
        self.factors = tuple(factors)  # ("T", n) or ("S", e) with e >= 1
        self.sign = sign

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def reconstruct(self) -> MetaElement:
        g = IDENTITY
        for kind, n in self.factors:
            if kind == "T":
                g = meta_compose(g, t_power(n))
            else:
                for _ in range(n):
                    g = meta_compose(g, S_TILDE)
        if self.sign == -1:
            g = meta_compose(g, MetaElement((1, 0, 0, 1), -1))
        return g

    def evaluate(self, t_image, s_image, identity, mul):
        """Image of the word under a representation given on generators."""
        out = identity
        for kind, n in self.factors:
            if kind == "T":
                out = mul(out, t_image(n))
            else:
                for _ in range(n):
                    out = mul(out, s_image)
        return out

    def __repr__(self):
        return "STWord(%r, sign=%+d)" % (list(self.factors), self.sign)


def st_word(g: MetaElement) -> STWord:
    """Euclidean decomposition of a lifted SL2(Z) element into T~ powers and S~.

    The reconstruction reproduces both the matrix and the eps sign.
    """
    if not g.is_integral():
        raise MetaError("not an integer matrix")
    a, b, c, d = g.int_entries()
    if a * d - b * c != 1:
        raise MetaError("not in SL2(Z)")
    factors = []
    cur = g
    # peel T^q S factors from the left until c = 0
    while cur.c != 0:
        a, c = cur.a, cur.c
        q = a // c
        factors.append(("T", int(q)))
        factors.append(("S", 1))
        # cur <- S^{-1} T^{-q} cur ; S^{-1} = S^3 with S^4 = (I, -1)
        step = meta_compose(meta_invert(S_TILDE), meta_compose(t_power(-int(q)), cur))
        cur = step
    # now cur = (delta, m; 0, delta) with delta = +-1
    delta = int(cur.a)
    m = int(cur.b)
    if delta == -1:
        factors.append(("S", 2))
        cur = meta_compose(meta_invert(meta_compose(S_TILDE, S_TILDE)), cur)
        m = int(cur.b)
    if m:
        factors.append(("T", m))
        cur = meta_compose(t_power(-m), cur)
    word = STWord(factors, cur.eps)
    return word


# ---------------------------------------------------------------------------
# multiplier characters


def chi_eta(g: MetaElement) -> CycloNumber:
    """Eta multiplier system on the double cover; a genuine character."""
    if not g.is_integral():
        raise MetaError("chi_eta needs an integer matrix")
    a, b, c, d = g.int_entries()
    if a * d - b * c != 1:
        raise MetaError("chi_eta needs determinant 1")
    if c % 2 != 0:
        val = kronecker(d, abs(c)) * cyclo_e(Fraction((a + d - 3) * c - b * d * (c * c - 1), 24))
    else:
        val = kronecker(c, d) * cyclo_e(Fraction((a - 2 * d) * c - b * d * (c * c - 1) + 3 * d - 3, 24))
    return val * g.eps


def chi_H(v, w, xi: int = 1) -> int:
    """Heisenberg character value xi * (-1)^(vw + v + w) at integer [v, w]."""
    v, w = int(v), int(w)
    return xi * (-1 if (v * w + v + w) % 2 else 1)


def chi_k(k: int, g: MetaElement) -> CycloNumber:
    """Multiplier of the k-th power of the half-shifted theta block on Gamma_0(2)."""
    a, b, c, d = g.int_entries()
    if c % 2 != 0:
        raise MetaError("chi_k needs c even")
    val = chi_eta(g) ** (3 * k)
    val = val * i_power((-k * (c // 2)) % 4)
    val = val * chi_H(c // 2, (d - 1) // 2) ** k
    return val


# ---------------------------------------------------------------------------
# group algebra


class AlgebraElement:
    """Finite formal sum of lifted matrices with cyclotomic coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        # terms: iterable of (coefficient, MetaElement) or dict MetaElement -> coeff
        agg = {}
        items = terms.items() if isinstance(terms, dict) else ((g, c) for c, g in terms)
        for g, c in items:
            if not isinstance(c, CycloNumber):
                c = CycloNumber.from_rational(c)
            if g in agg:
                agg[g] = agg[g] + c
            else:
                agg[g] = c
        object.__setattr__(self, "terms", {g: c for g, c in agg.items() if not c.is_zero()})

    def __setattr__(self, *a):
        raise AttributeError("AlgebraElement is immutable")

    @staticmethod
    def of(g: MetaElement) -> "AlgebraElement":
        return AlgebraElement([(1, g)])

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out[g] + c if g in out else c
        return AlgebraElement(out)

    def scalar_mul(self, c) -> "AlgebraElement":
        if not isinstance(c, CycloNumber):
            c = CycloNumber.from_rational(c)
        return AlgebraElement({g: x * c for g, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            out = {}
            for g1, c1 in self.terms.items():
                for g2, c2 in other.terms.items():
                    g = meta_compose(g1, g2)
                    c = c1 * c2
                    out[g] = out[g] + c if g in out else c
            return AlgebraElement(out)
        return self.scalar_mul(other)

    __rmul__ = scalar_mul

    def __neg__(self):
        return self.scalar_mul(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[g] == other.terms[g] for g in self.terms)

    __hash__ = None

    def content(self) -> int:
        """gcd of the lower-left entries across the support."""
        g = 0
        for el in self.terms:
            c = el.c
            if c.denominator != 1:
                raise MetaError("content needs integral lower-left entries")
            g = gcd(g, int(c))
        return g

    def support(self):
        return list(self.terms)

    def __repr__(self):
        return "Algebra(%s)" % (", ".join("%r * %r" % (c, g) for g, c in self.terms.items()),)
