"""Truncated Laurent q-series on a fractional exponent grid, with exact coefficients.

A FracQSeries keeps terms q^(e/D) -> coefficient for scaled integer exponents e,
plus a truncation bound T: coefficients are asserted correct for all e < T and
nothing is claimed at or beyond T.  Reads at or past T raise, never return 0.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


class TruncationError(Exception):
    """Raised when a coefficient beyond the valid range is requested."""


class GridError(ValueError):
    pass


INF = None  # truncation bound of exact (fully known) series


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _tmin(a, b):
    if a is INF:
        return b
    if b is INF:
        return a
    return min(a, b)


class FracQSeries:
    __slots__ = ("grid", "terms", "trunc")

    def __init__(self, grid: int, terms: dict, trunc, _clean: bool = False):
        if grid < 1:
            raise GridError("grid denominator must be positive")
        if not _clean:
            terms = {e: _norm_coeff(c) for e, c in terms.items() if c != 0}
            if trunc is not INF:
                terms = {e: c for e, c in terms.items() if e < trunc}
        self.grid = grid
        self.terms = terms
        self.trunc = trunc

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(grid: int = 1, trunc=INF) -> "FracQSeries":
        return FracQSeries(grid, {}, trunc, _clean=True)

    @staticmethod
    def const(c, grid: int = 1, trunc=INF) -> "FracQSeries":
        return FracQSeries(grid, {0: c}, trunc)

    @staticmethod
    def monomial(r, c=1, trunc=INF) -> "FracQSeries":
        """c * q^r for rational r."""
        r = Fraction(r)
        return FracQSeries(r.denominator, {r.numerator: c}, trunc)

    @staticmethod
    def one() -> "FracQSeries":
        return FracQSeries.const(1)

    # -- structure -----------------------------------------------------------

    def regrid(self, new_grid: int) -> "FracQSeries":
        if new_grid == self.grid:
            return self
        if new_grid % self.grid == 0:
            f = new_grid // self.grid
            return FracQSeries(
                new_grid,
                {e * f: c for e, c in self.terms.items()},
                INF if self.trunc is INF else self.trunc * f,
                _clean=True,
            )
        # shrink only when every exponent stays integral
        if self.grid % new_grid == 0:
            f = self.grid // new_grid
            if all(e % f == 0 for e in self.terms):
                t = INF
                if self.trunc is not INF:
                    t = -((-self.trunc) // f)  # ceil
                return FracQSeries(new_grid, {e // f: c for e, c in self.terms.items()}, t, _clean=True)
        raise GridError("cannot regrid %d -> %d" % (self.grid, new_grid))

    def compact(self) -> "FracQSeries":
        """Shrink the grid to the smallest denominator actually used."""
        g = self.grid
        d = 0
        for e in self.terms:
            d = gcd(d, e)
        if self.trunc is not INF:
            d = gcd(d, self.trunc)
        if d == 0:
            d = g
        keep = g // gcd(g, d) if d else 1
        return self.regrid(keep) if keep != self.grid and self.grid % keep == 0 else self

    def _align(self, other: "FracQSeries"):
        g = lcm(self.grid, other.grid)
        return self.regrid(g), other.regrid(g)

    def valuation(self):
        """Lowest exponent as a Fraction, or None for the zero series."""
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.grid)

    def order_bound(self):
        """Truncation exponent as a Fraction (exclusive), or None if exact."""
        if self.trunc is INF:
            return None
        return Fraction(self.trunc, self.grid)

    def coeff_at(self, r) -> Fraction:
        r = Fraction(r)
        e = r * self.grid
        if self.trunc is not INF and e >= self.trunc:
            raise TruncationError("coefficient at %s is beyond truncation %s" % (r, Fraction(self.trunc, self.grid)))
        if e.denominator != 1:
            return Fraction(0)
        c = self.terms.get(e.numerator, 0)
        return Fraction(c)

    def items_sorted(self):
        return sorted(self.terms.items())

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FracQSeries.const(other)
        a, b = self._align(other)
        t = _tmin(a.trunc, b.trunc)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm_coeff(s)
            else:
                out.pop(e, None)
        return FracQSeries(a.grid, out, t)

    __radd__ = __add__

    def __neg__(self):
        return FracQSeries(self.grid, {e: -c for e, c in self.terms.items()}, self.trunc, _clean=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FracQSeries.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return FracQSeries.zero(self.grid, self.trunc)
            return FracQSeries(self.grid, {e: c * other for e, c in self.terms.items()}, self.trunc)
        a, b = self._align(other)
        # product is valid below min(val_a + T_b, val_b + T_a)
        if not a.terms or not b.terms:
            t = _tmin(
                INF if a.trunc is INF else (a.trunc + (min(b.terms) if b.terms else 0)),
                INF if b.trunc is INF else (b.trunc + (min(a.terms) if a.terms else 0)),
            )
            return FracQSeries.zero(a.grid, t)
        va, vb = min(a.terms), min(b.terms)
        t = _tmin(
            INF if b.trunc is INF else va + b.trunc,
            INF if a.trunc is INF else vb + a.trunc,
        )
        out = {}
        bi = sorted(b.terms.items())
        for ea, ca in sorted(a.terms.items()):
            for eb, cb in bi:
                e = ea + eb
                if t is not INF and e >= t:
                    break
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return FracQSeries(a.grid, out, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FracQSeries":
        if k < 0:
            return self.inverse_unit() ** (-k)
        result = FracQSeries(self.grid, {0: 1}, INF, _clean=True)
        base = self
        e = k
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse_unit(self) -> "FracQSeries":
        """Inverse of a series whose lowest term is invertible (grid-shifted Newton-free recurrence)."""
        if not self.terms:
            raise ZeroDivisionError("inverse of zero series")
        v = min(self.terms)
        lead = Fraction(self.terms[v])
        if len(self.terms) == 1:
            inv_term = {-v: _norm_coeff(1 / lead)}
            return FracQSeries(self.grid, inv_term, self._inv_monomial_trunc(v), _clean=True)
        if self.trunc is INF:
            span = max(self.terms) - v + 1  # polynomial input: claim only the computed window
        else:
            span = self.trunc - v
        u = {e - v: c for e, c in self.terms.items()}
        us = sorted(u.items())
        int_path = lead in (1, -1) and all(isinstance(c, int) for c in self.terms.values())
        sign = int(lead) if int_path else None
        inv = {0: sign if int_path else 1 / lead}
        for n in range(1, span):
            s = 0
            for e, c in us:
                if e == 0:
                    continue
                if e > n:
                    break
                prev = inv.get(n - e)
                if prev:
                    s += c * prev
            if s:
                inv[n] = -sign * s if int_path else -Fraction(s) / lead
        t = span - v if self.trunc is INF else self.trunc - 2 * v
        out = {e - v: _norm_coeff(c) for e, c in inv.items() if c}
        return FracQSeries(self.grid, out, t, _clean=True)

    def _inv_monomial_trunc(self, v):
        return INF if self.trunc is INF else self.trunc - 2 * v

    def div_by_unit(self, other: "FracQSeries") -> "FracQSeries":
        return self * other.inverse_unit()

    def scale_q(self, m: int) -> "FracQSeries":
        """Substitution q -> q^m."""
        if m < 1:
            raise GridError("scale factor must be positive")
        return FracQSeries(
            self.grid,
            {e * m: c for e, c in self.terms.items()},
            INF if self.trunc is INF else self.trunc * m,
            _clean=True,
        )

    def shift_q(self, r) -> "FracQSeries":
        """Multiply by q^r."""
        r = Fraction(r)
        g = lcm(self.grid, r.denominator)
        a = self.regrid(g)
        d = r.numerator * (g // r.denominator)
        return FracQSeries(
            g,
            {e + d: c for e, c in a.terms.items()},
            INF if a.trunc is INF else a.trunc + d,
            _clean=True,
        )

    def truncate(self, order) -> "FracQSeries":
        """Restrict validity to exponents < order (a Fraction in q units)."""
        order = Fraction(order)
        g = lcm(self.grid, order.denominator)
        a = self.regrid(g)
        t = order.numerator * (g // order.denominator)
        if a.trunc is not INF and t > a.trunc:
            raise TruncationError("cannot extend truncation from %s to %s" % (a.order_bound(), order))
        return FracQSeries(g, {e: c for e, c in a.terms.items() if e < t}, t, _clean=True)

    # -- queries ---------------------------------------------------------------

    def same_series(self, other: "FracQSeries") -> bool:
        """Agreement on the common validity range (grid-aligned)."""
        a, b = self._align(other)
        t = _tmin(a.trunc, b.trunc)
        if t is INF:
            return a.terms == b.terms
        return {e: c for e, c in a.terms.items() if e < t} == {e: c for e, c in b.terms.items() if e < t}

    def __eq__(self, other):
        if not isinstance(other, FracQSeries):
            return NotImplemented
        a, b = self.compact(), other.compact()
        return a.grid == b.grid and a.trunc == b.trunc and a.terms == b.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        items = self.items_sorted()[:6]
        body = " + ".join("%s*q^(%s)" % (c, Fraction(e, self.grid)) for e, c in items)
        more = " + ..." if len(self.terms) > 6 else ""
        t = "exact" if self.trunc is INF else "O(q^%s)" % (Fraction(self.trunc, self.grid),)
        return "QSeries(%s%s; %s)" % (body or "0", more, t)

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.trunc is INF:
            raise ValueError("JSON format requires a finite truncation bound")
        terms = []
        for e, c in self.items_sorted():
            f = Fraction(c)
            terms.append([e, "%d/%d" % (f.numerator, f.denominator)])
        return {"grid": self.grid, "trunc": self.trunc, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json_dict(d: dict) -> "FracQSeries":
        terms = {}
        for e, c in d["terms"]:
            num, _, den = c.partition("/")
            terms[int(e)] = Fraction(int(num), int(den or "1"))
        return FracQSeries(int(d["grid"]), terms, int(d["trunc"]))

    @staticmethod
    def from_json(s: str) -> "FracQSeries":
        return FracQSeries.from_json_dict(json.loads(s))


# ---------------------------------------------------------------------------
# Dedekind eta and eta quotients


@lru_cache(maxsize=32)
def euler_product_terms(order: int):
    """Sparse expansion of prod_{j>=1} (1 - q^j) below q^order (pentagonal numbers)."""
    terms = {0: 1}
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        s = -1 if j % 2 else 1
        hit = False
        if g1 < order:
            terms[g1] = s
            hit = True
        if g2 < order:
            terms[g2] = s
            hit = True
        if not hit:
            break
        j += 1
    return terms


def euler_series(order: int) -> FracQSeries:
    return FracQSeries(1, dict(euler_product_terms(order)), order, _clean=True)


def eta_series(order: int) -> FracQSeries:
    """eta = q^{1/24} prod (1-q^j) on grid 24, valid below q^(order/24)."""
    if order <= 0:
        raise ValueError("order must be positive")
    n = order // 24 + 2
    return euler_series(n).shift_q(Fraction(1, 24)).truncate(Fraction(order, 24))


class EtaQuotientSpec:
    """Product of eta(m*tau)^r factors with distinct scales m."""

    def __init__(self, factors):
        factors = [(int(m), int(r)) for m, r in factors]
        scales = [m for m, _ in factors]
        if len(set(scales)) != len(scales):
            raise ValueError("scales must be distinct")
        if any(m < 1 for m in scales):
            raise ValueError("scales must be positive")
        self.factors = tuple(sorted((m, r) for m, r in factors if r != 0))

    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    def q_prefactor(self) -> Fraction:
        """Exponent of the leading q power, sum of m*r/24."""
        return Fraction(sum(m * r for m, r in self.factors), 24)

    def __repr__(self):
        return "EtaQuotientSpec(%r)" % (list(self.factors),)


def eta_quotient(spec, order: int) -> FracQSeries:
    """Exact expansion of prod eta(m tau)^r on grid 24, valid below q^(order/24)."""
    if order <= 0:
        raise ValueError("order must be positive")
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(spec)
    bound = Fraction(order, 24)
    shift = spec.q_prefactor()
    # Euler-part order needed beyond the prefactor
    n = max(int(bound - shift) + 2, 1)
    num = FracQSeries(1, {0: 1}, n, _clean=True)
    den = FracQSeries(1, {0: 1}, n, _clean=True)
    for m, r in spec.factors:
        base = euler_series(n).scale_q(m).truncate(n)
        for _ in range(abs(r)):
            if r > 0:
                num = num * base
            else:
                den = den * base
    out = num if den.terms == {0: 1} else num.div_by_unit(den)
    out = out.shift_q(shift).regrid(24)
    return out.truncate(bound)


# ---------------------------------------------------------------------------
# U operators and valuation scans


def u_operator(f: FracQSeries, p: int, step: int) -> FracQSeries:
    """(1/p) sum_{x} f((tau + step*x)/p) over the residue set {0, step, ..., (p-1)step}.

    On q-expansions a term q^(e/D) survives iff D*p | step*e and maps to q^(e/(p*D)),
    i.e. scaled exponent e/p on the unchanged grid.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if gcd(step, p) != 1:
        raise ValueError("representatives %d*Z do not cover Z/%dZ" % (step, p))
    D = f.grid
    out = {}
    for e, c in f.terms.items():
        ne = step * e
        if ne % D != 0:
            raise GridError("exponent %s incompatible with step %d averaging" % (Fraction(e, D), step))
        if ne % (D * p) == 0:
            out[e // p] = c
    t = INF if f.trunc is INF else -((-f.trunc) // p)  # ceil(T/p)
    return FracQSeries(D, out, t, _clean=True)


def min_padic_valuation(f: FracQSeries, p: int, lo, hi):
    """Minimum p-adic valuation of coefficients with lo <= exponent < hi; None means +infinity.

    Raises on non-integral coefficients and on reads beyond the truncation bound.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if f.trunc is not INF and hi * f.grid > f.trunc:
        raise TruncationError("range end %s beyond truncation %s" % (hi, f.order_bound()))
    best = None
    for e, c in f.terms.items():
        x = Fraction(e, f.grid)
        if not (lo <= x < hi):
            continue
        c = Fraction(c)
        if c.denominator != 1:
            raise ValueError("non-integral coefficient %s at q^%s" % (c, x))
        n = c.numerator
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        best = v if best is None else min(best, v)
    return best
