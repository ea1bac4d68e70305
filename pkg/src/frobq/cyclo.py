"""Exact arithmetic substrate: Kronecker-Jacobi symbol, cyclotomic numbers, Gauss sums.

Every root of unity e(a/b) lives in some Q(zeta_N); CycloNumber stores an element
of Q(zeta_N) canonically reduced modulo the N-th cyclotomic polynomial, so equality
is plain coefficient comparison.  Square roots of positive integers are embedded
exactly via quadratic Gauss sums, which keeps all matrix identities in this code
base inside a single exact number type.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class ExactArithError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Kronecker-Jacobi symbol


def kronecker(m: int, n: int) -> int:
    """Kronecker-Jacobi symbol (m/n), totally defined on Z x Z."""
    if n == 0:
        return 1 if m in (1, -1) else 0
    if m % 2 == 0 and n % 2 == 0:
        return 0
    sign = 1
    if n < 0:
        n = -n
        if m < 0:
            sign = -sign
    # (m/2) rule, applied to the 2-part of n
    t2 = 0
    while n % 2 == 0:
        n //= 2
        t2 += 1
    if t2 % 2 == 1 and m % 8 in (3, 5):
        sign = -sign
    # now n odd positive: Jacobi via reciprocity
    m %= n
    while m != 0:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                sign = -sign
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            sign = -sign
        m %= n
    return sign if n == 1 else 0


# ---------------------------------------------------------------------------
# number-theory helpers


def factorize(n: int) -> dict:
    """Trial-division factorization of n >= 1."""
    if n < 1:
        raise ExactArithError("factorize expects n >= 1")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a, b):
    # exact division of integer polynomials, b monic-leading assumed nonzero
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c % b[-1] != 0:
            raise ExactArithError("inexact poly division")
        q[i] = c // b[-1]
        if q[i]:
            for j, y in enumerate(b):
                a[i + j] -= q[i] * y
    if any(a):
        raise ExactArithError("inexact poly division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """Integer coefficient vectors of zeta_n^j, j = 0..n-1, in the power basis."""
    phi = euler_phi(n)
    cp = cyclotomic_polynomial(n)
    # zeta^phi = -(cp[0] + cp[1] z + ... + cp[phi-1] z^{phi-1})
    top = [-c for c in cp[:phi]]
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        nxt = [0] * phi
        carry = cur[phi - 1]
        for i in range(phi - 1, 0, -1):
            nxt[i] = cur[i - 1]
        if carry:
            for i in range(phi):
                nxt[i] += carry * top[i]
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _lift_table(n: int, m: int) -> tuple:
    """Basis vectors of zeta_n^i inside Q(zeta_m), for n | m."""
    if m % n != 0:
        raise ExactArithError("conductor lift needs n | m")
    step = m // n
    pt = _power_table(m)
    return tuple(pt[(i * step) % m] for i in range(euler_phi(n)))


class CycloNumber:
    """Element of Q(zeta_n), canonical in the power basis mod the n-th cyclotomic polynomial.

    Stored as integer numerators over a single positive denominator with
    gcd(content, den) = 1.  Immutable.
    """

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num, den: int = 1, _normalized: bool = False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num = list(num)
            if len(num) != euler_phi(n):
                raise ExactArithError("coefficient vector has wrong length")
            if den < 0:
                den = -den
                num = [-x for x in num]
            g = den
            for x in num:
                g = gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                den //= g
                num = [x // g for x in num]
            num = tuple(num)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("CycloNumber is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(x) -> "CycloNumber":
        x = Fraction(x)
        return CycloNumber(1, (x.numerator,), x.denominator)

    @staticmethod
    def zero() -> "CycloNumber":
        return CycloNumber(1, (0,), 1, _normalized=True)

    @staticmethod
    def one() -> "CycloNumber":
        return CycloNumber(1, (1,), 1, _normalized=True)

    # -- representation ----------------------------------------------------

    def lift(self, m: int) -> "CycloNumber":
        """Embed into Q(zeta_m) for n | m."""
        if m == self.n:
            return self
        table = _lift_table(self.n, m)
        phim = euler_phi(m)
        out = [0] * phim
        for i, c in enumerate(self.num):
            if c:
                row = table[i]
                for j in range(phim):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloNumber(m, out, self.den)

    def terms(self):
        """Sparse (exponent, Fraction coefficient) pairs over the power basis."""
        return [(i, Fraction(c, self.den)) for i, c in enumerate(self.num) if c]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ExactArithError("not a rational value: %r" % (self,))
        return Fraction(self.num[0], self.den)

    # -- ring operations ----------------------------------------------------

    def _join(self, other):
        if not isinstance(other, CycloNumber):
            other = CycloNumber.from_rational(other)
        m = lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(other)
        elif not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._join(other)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CycloNumber(a.n, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.n, tuple(-x for x in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(other)
        elif not isinstance(other, CycloNumber):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloNumber(self.n, [x * f.numerator for x in self.num], self.den * f.denominator)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._join(other)
        phi = euler_phi(a.n)
        if phi == 1:
            return CycloNumber(a.n, (a.num[0] * b.num[0],), a.den * b.den)
        conv = [0] * (2 * phi - 1)
        bi = [(j, y) for j, y in enumerate(b.num) if y]
        for i, x in enumerate(a.num):
            if x:
                for j, y in bi:
                    conv[i + j] += x * y
        out = list(conv[:phi])
        pt = _power_table(a.n)
        for s in range(phi, 2 * phi - 1):
            c = conv[s]
            if c:
                row = pt[s % a.n]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloNumber(a.n, out, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * Fraction(f.denominator, f.numerator)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = CycloNumber.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def conj(self) -> "CycloNumber":
        """Complex conjugation zeta -> zeta^{-1}."""
        phi = euler_phi(self.n)
        pt = _power_table(self.n)
        out = [0] * phi
        for i, c in enumerate(self.num):
            if c:
                row = pt[(self.n - i) % self.n]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloNumber(self.n, out, self.den)

    def abs2(self) -> "CycloNumber":
        """z * conj(z)."""
        return self * self.conj()

    def inv(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            q = self.rational_value()
            return CycloNumber.from_rational(1 / q)
        c = self.abs2()
        if c.is_rational():
            return self.conj() * (1 / c.rational_value())
        return self._inv_linear()

    def _inv_linear(self) -> "CycloNumber":
        # solve self * x = 1 over Q in the power basis
        phi = euler_phi(self.n)
        pt = _power_table(self.n)
        cols = []
        for j in range(phi):
            col = [0] * phi
            for i, c in enumerate(self.num):
                if c:
                    row = pt[(i + j) % self.n] if i + j >= phi else None
                    if row is None:
                        col[i + j] += c
                    else:
                        for t in range(phi):
                            col[t] += c * row[t]
            cols.append(col)
        mat = [[Fraction(cols[j][i], self.den) for j in range(phi)] for i in range(phi)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(phi)]
        # Gaussian elimination
        for i in range(phi):
            piv = next((r for r in range(i, phi) if mat[r][i] != 0), None)
            if piv is None:
                raise ExactArithError("singular multiplication matrix")
            mat[i], mat[piv] = mat[piv], mat[i]
            rhs[i], rhs[piv] = rhs[piv], rhs[i]
            inv = 1 / mat[i][i]
            mat[i] = [x * inv for x in mat[i]]
            rhs[i] *= inv
            for r in range(phi):
                if r != i and mat[r][i]:
                    f = mat[r][i]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[i])]
                    rhs[r] -= f * rhs[i]
        den = lcm(*[f.denominator for f in rhs]) if phi > 1 else rhs[0].denominator
        return CycloNumber(self.n, [int(f * den) for f in rhs], den)

    def reduced(self) -> "CycloNumber":
        """Canonical representation over the smallest cyclotomic subfield.

        Tries every divisor conductor in increasing order (skipping the
        degenerate 2 mod 4 ones) and solves the membership system exactly.
        """
        n = self.n
        if n == 1:
            return self
        for m in sorted(d for d in range(1, n) if n % d == 0):
            if m % 4 == 2:
                continue
            sol = self._in_subfield(m)
            if sol is not None:
                return sol
        return self

    def _in_subfield(self, m: int):
        """CycloNumber over conductor m equal to self, or None."""
        n = self.n
        table = _lift_table(m, n)
        phin, phim = euler_phi(n), euler_phi(m)
        # solve sum_j x_j * table[j] = self (over Q), columns j < phim
        mat = [[Fraction(table[j][i]) for j in range(phim)] for i in range(phin)]
        rhs = [Fraction(self.num[i], self.den) for i in range(phin)]
        piv_cols = []
        r = 0
        for j in range(phim):
            piv = next((i for i in range(r, phin) if mat[i][j] != 0), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            rhs[r], rhs[piv] = rhs[piv], rhs[r]
            inv = 1 / mat[r][j]
            mat[r] = [x * inv for x in mat[r]]
            rhs[r] *= inv
            for i in range(phin):
                if i != r and mat[i][j] != 0:
                    f = mat[i][j]
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
                    rhs[i] -= f * rhs[r]
            piv_cols.append((r, j))
            r += 1
        for i in range(r, phin):
            if rhs[i] != 0:
                return None
        coeffs = [Fraction(0)] * phim
        for row, col in piv_cols:
            coeffs[col] = rhs[row]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return CycloNumber(m, [int(c * den) for c in coeffs], den)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == Fraction(other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._join(other)
        return a.num == b.num and a.den == b.den

    __hash__ = None  # equality crosses conductors; use explicit keys instead

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        from cmath import exp, pi

        z = 0j
        for i, c in self.terms():
            z += float(c) * exp(2j * pi * i / self.n)
        return z

    def __repr__(self):
        if self.is_rational():
            return "Cyclo(%s)" % (self.rational_value(),)
        body = " + ".join("%s*z%d^%d" % (Fraction(c, self.den), self.n, i) for i, c in enumerate(self.num) if c)
        return "Cyclo[%d](%s)" % (self.n, body)


def cyclo_e(r) -> CycloNumber:
    """e(r) = exp(2*pi*i*r) for rational r, as an exact cyclotomic number."""
    r = Fraction(r) % 1
    b = r.denominator
    return CycloNumber(b, _power_table(b)[r.numerator % b], 1)


def i_power(e: int) -> CycloNumber:
    return cyclo_e(Fraction(e % 4, 4))


@lru_cache(maxsize=None)
def sqrt_cyclo(n: int) -> CycloNumber:
    """Exact sqrt(n) for a positive integer, as a cyclotomic number.

    Realized through quadratic Gauss sums: sqrt(p) lies in Q(zeta_p) or
    Q(zeta_{4p}), sqrt(2) = zeta_8 + zeta_8^{-1}.
    """
    if n <= 0:
        raise ExactArithError("sqrt_cyclo expects n > 0")
    square = 1
    rest = 1
    for p, e in factorize(n).items():
        square *= p ** (e // 2)
        if e % 2:
            rest *= p
    out = CycloNumber.from_rational(square)
    for p in factorize(rest):
        if p == 2:
            out = out * (cyclo_e(Fraction(1, 8)) + cyclo_e(Fraction(7, 8)))
        else:
            g = sum((cyclo_e(Fraction(x * x, p)) for x in range(1, p)), CycloNumber.one())
            if p % 4 == 3:
                g = g * cyclo_e(Fraction(-1, 4))  # Gauss: sum = i*sqrt(p)
            out = out * g
    return out


def sqrt_rational(q) -> CycloNumber:
    """Exact sqrt of a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ExactArithError("sqrt_rational expects positive input")
    return sqrt_cyclo(q.numerator * q.denominator) / q.denominator


def classical_gauss_sum(n: int, m: int, method: str = "brute") -> CycloNumber:
    """G(n, m) = sum_{x=0}^{|m|-1} e(n x^2 / m), exactly.

    method="closed" evaluates the standard three-case closed form and
    requires m > 0 and gcd(n, m) = 1.
    """
    if m == 0:
        raise ExactArithError("m must be nonzero")
    if method == "brute":
        total = CycloNumber.zero()
        for x in range(abs(m)):
            total = total + cyclo_e(Fraction(n * x * x, m))
        return total
    if method != "closed":
        raise ExactArithError("unknown method %r" % (method,))
    if m <= 0 or gcd(n, m) != 1:
        raise ExactArithError("closed form needs m > 0 and gcd(n, m) = 1")
    if m % 2 == 1:
        return sqrt_cyclo(m) * kronecker(2 * n, m) * cyclo_e(Fraction(1 - m, 8))
    if m % 4 == 0:
        return sqrt_cyclo(2 * m) * kronecker(2 * m, n) * cyclo_e(Fraction(n, 8))
    return CycloNumber.zero()  # m = 2 mod 4
