"""Generating functions of generalized Frobenius partitions.

Two independent routes are kept on purpose and used as mutual oracles:

* extraction of a zeta-power coefficient from the k-th power of the
  half-shifted Jacobi theta factor, divided by the eta power, and
* a lattice-point count (sum of squares with tracked linear sum) feeding
  the theta-decomposition components h_t.

The global sign of the theta factor is anchored by requiring that the
constant coefficient of each series equals the matching binomial
coefficient of (1 + 1/zeta)^k.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .cyclo import cyclo_e
from .qseries import FracQSeries, euler_series


class BetaError(ValueError):
    pass


def beta_set(k: int):
    """Canonical index set: integers 0..k/2 for even k, half-integers 1/2..k/2 for odd k."""
    if k % 2 == 0:
        return [Fraction(b) for b in range(k // 2 + 1)]
    return [Fraction(2 * b + 1, 2) for b in range((k + 1) // 2)]


def lambda_reduce(k: int, beta) -> Fraction:
    """The unique element of the canonical index set congruent to +-beta mod k."""
    beta = Fraction(beta)
    if (2 * beta).denominator != 1:
        raise BetaError("beta must be a half-integer")
    two = int(2 * beta) % (2 * k)
    if two <= k:
        return Fraction(two, 2)
    return k - Fraction(two, 2)


# ---------------------------------------------------------------------------
# Jacobi route


class JacobiSeries:
    """Laurent series in q (grid 8) and zeta (half-integer exponents, stored doubled)."""

    __slots__ = ("terms", "trunc")

    def __init__(self, terms: dict, trunc: int):
        self.terms = {ew: c for ew, c in terms.items() if c}
        self.trunc = trunc  # scaled q bound, grid 8

    def mul(self, other: "JacobiSeries") -> "JacobiSeries":
        t = min(self.trunc, other.trunc)  # both factors have valuation >= 0 in q
        out = {}
        bi = sorted(other.terms.items())
        for (ea, wa), ca in sorted(self.terms.items()):
            for (eb, wb), cb in bi:
                e = ea + eb
                if e >= t:
                    break
                key = (e, wa + wb)
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
        return JacobiSeries(out, t)

    def zeta_coefficient(self, w2: int) -> FracQSeries:
        """Coefficient of zeta^(w2/2) as a q-series on grid 8."""
        out = {e: c for (e, w), c in self.terms.items() if w == w2}
        return FracQSeries(8, out, self.trunc)


@lru_cache(maxsize=64)
def theta_half_factor(order8: int) -> JacobiSeries:
    """sum_{n in 1/2+Z} q^{n^2/2} zeta^n truncated below q^(order8/8); equals -theta(tau, z+1/2)."""
    terms = {}
    m = 0
    while (2 * m + 1) ** 2 < order8:
        for n2 in (2 * m + 1, -(2 * m + 1)):
            terms[(n2 * n2, n2)] = 1
        m += 1
    return JacobiSeries(terms, order8)


@lru_cache(maxsize=64)
def _theta_power(k: int, order8: int) -> JacobiSeries:
    if k == 1:
        return theta_half_factor(order8)
    half = _theta_power(k // 2, order8)
    out = half.mul(half)
    if k % 2:
        out = out.mul(theta_half_factor(order8))
    return out


def theta_halfshift_power(k: int, order) -> JacobiSeries:
    """theta(tau, z + 1/2)^k below q^order; q on grid 8, zeta exponents doubled."""
    if order <= 0:
        raise ValueError("order must be positive")
    order8 = 8 * order
    p = _theta_power(k, order8)
    if k % 2 == 0:
        return p
    return JacobiSeries({ew: -c for ew, c in p.terms.items()}, p.trunc)


@lru_cache(maxsize=256)
def cpsi(k: int, beta, order: int = 80) -> FracQSeries:
    """Series of generalized Frobenius partition counts, by theta-power extraction.

    beta is reduced to the canonical index set first, so the result is invariant
    under beta -> -beta and beta -> beta + k.  Integer exponents, integer
    coefficients, valid below q^order.
    """
    beta = Fraction(beta)
    if (beta - Fraction(k, 2)).denominator != 1:
        raise BetaError("beta must lie in k/2 + Z")
    beta = lambda_reduce(k, beta)
    # q-order needed inside theta^k: exponent (sum of k odd squares)/8, shifted by k/8
    order8 = 8 * order + k
    p = _theta_power(k, order8)
    ext = p.zeta_coefficient(int(2 * beta))
    # divide by q^{k/12} eta^k = q^{k/8} E^k
    ext = ext.shift_q(Fraction(-k, 8)).regrid(1)
    ek = euler_series(order) ** k
    out = ext.truncate(order).div_by_unit(ek).truncate(order)
    return out.regrid(1)


def cpsi_coefficient(k: int, beta, n: int) -> int:
    c = cpsi(k, beta, max(n + 1, 8)).coeff_at(n)
    assert c.denominator == 1
    return c.numerator


def f_kbeta(k: int, beta, order: int = 80) -> FracQSeries:
    """q^(k/12 - beta^2/2k) times the partition series, on grid 24k."""
    beta = lambda_reduce(k, Fraction(beta))
    if beta not in beta_set(k):
        raise BetaError("beta outside canonical set")
    pref = Fraction(k, 12) - beta * beta / (2 * k)
    c = cpsi(k, beta, order)
    return (c.shift_q(pref)).regrid(24 * k)


# ---------------------------------------------------------------------------
# lattice-count route


@lru_cache(maxsize=32)
def _repcount_table(k: int, max_m: int) -> dict:
    """counts[(m, r)] = #{x in Z^k : sum x_i^2 = m, sum x_i = r} for m <= max_m."""
    counts = {(0, 0): 1}
    for _ in range(k):
        nxt = {}
        for (m, r), c in counts.items():
            xmax = isqrt(max_m - m)
            for x in range(-xmax, xmax + 1):
                key = (m + x * x, r + x)
                nxt[key] = nxt.get(key, 0) + c
        counts = nxt
    return counts


def repcount(k: int, m, r) -> int:
    m, r = Fraction(m), Fraction(r)
    if m.denominator != 1 or r.denominator != 1 or m < 0:
        return 0
    m, r = int(m), int(r)
    if r * r > k * m:
        return 0
    bucket = -(-max(m, 1) // 64) * 64  # quantize the cache key
    return _repcount_table(k, bucket).get((m, r), 0)


def h_component(k: int, t, order: int = 60) -> FracQSeries:
    """Theta-decomposition component h_t for the rank-1 lattice of level k.

    Series in q^n with n on grid 2k; the root-of-unity prefactor e(kt) is
    evaluated exactly (it is always +-1 on the admissible grid) and folded in.
    """
    t = Fraction(t)
    grid_den = k if k % 2 == 0 else 2 * k
    if (t * grid_den).denominator != 1:
        raise BetaError("t must lie on the dual-lattice grid 1/%d Z" % grid_den)
    r = k * (t - Fraction(1, 2))
    out_grid = 2 * k
    c0 = k * (t - Fraction(1, 2)) ** 2  # n = (m - c0)/2 over integer m
    trunc_scaled = order * out_grid
    if r.denominator != 1:
        return FracQSeries.zero(out_grid, trunc_scaled)
    pref = cyclo_e(k * t)
    assert pref.is_rational()
    sign = pref.rational_value()
    r = int(r)
    max_m = int(2 * order + c0) + 1
    table = _repcount_table(k, max_m)
    terms = {}
    for (m, rr), cnt in table.items():
        if rr != r:
            continue
        n = (Fraction(m) - c0) / 2
        e = n * out_grid
        assert e.denominator == 1
        if e.numerator < trunc_scaled:
            terms[e.numerator] = sign * cnt
    return FracQSeries(out_grid, terms, trunc_scaled)


def f_kbeta_from_h(k: int, beta, order: int = 60) -> FracQSeries:
    """(-1)^k h_{beta/k} / eta^k, the second route to the same vector component."""
    beta = Fraction(beta)
    h = h_component(k, beta / k, order + 1)
    etak = euler_series(order + 2).shift_q(Fraction(1, 24)) ** k
    sign = 1 if k % 2 == 0 else -1
    return (h * etak.inverse_unit() * sign).truncate(order).regrid(24 * k)


# ---------------------------------------------------------------------------
# closed eta-quotient forms for k = 3


def cpsi3_closed(beta, order: int = 100) -> FracQSeries:
    """Closed eta-quotient series for the k = 3 family, beta in {1/2, 3/2}."""
    from .qseries import eta_quotient

    beta = Fraction(beta)
    n24 = 24 * (order + 2)
    if beta == Fraction(1, 2):
        f = eta_quotient([(3, 3), (1, -4)], n24) * 3
        out = f.shift_q(Fraction(-5, 24))
    elif beta == Fraction(3, 2):
        a = eta_quotient([(3, -1)], n24)
        b = eta_quotient([(9, 3), (3, -1), (1, -3)], n24) * 9
        out = (a + b).shift_q(Fraction(1, 8))
    else:
        raise BetaError("closed form available only for beta in {1/2, 3/2}")
    return out.truncate(order).regrid(1)


# ---------------------------------------------------------------------------
# fast coefficient engines (numpy arrays, optionally mod m) for congruence scans


def _np():
    import numpy as np

    return np


def euler_coeffs_mod(order: int, m: int | None):
    """Array of prod (1-q^j) coefficients below order, mod m when given."""
    np = _np()
    out = np.zeros(order, dtype=object if m is None else np.int64)
    for e, s in euler_series(order).terms.items():
        out[e] = s % m if m else s
    return out


def inv_euler_coeffs_mod(order: int, m: int | None, scale: int = 1):
    """Array of 1 / prod (1-q^{scale*j}) coefficients below order, via the pentagonal recurrence."""
    np = _np()
    pent = [(scale * e, s) for e, s in euler_series(order // scale + 2).terms.items() if e > 0 and scale * e < order]
    out = np.zeros(order, dtype=object if m is None else np.int64)
    out[0] = 1
    vals = [0] * order
    vals[0] = 1
    for n in range(1, order):
        s = 0
        for e, sg in pent:
            if e > n:
                break
            if sg == 1:
                s -= vals[n - e]
            else:
                s += vals[n - e]
        vals[n] = s % m if m else s
    for n in range(order):
        out[n] = vals[n]
    return out


def _conv_mod(a, b, order: int, m: int | None):
    np = _np()
    full = np.convolve(a[:order], b[:order])[:order]
    if m:
        full %= m
    return full


def cpsi_mod(k: int, beta, order: int, m: int | None):
    """Coefficient array of the partition series below q^order, reduced mod m.

    Dedicated fast paths per k; validated against the exact theta-extraction
    route in the test suite.  For m = None exact integers are returned.
    """
    np = _np()
    beta = lambda_reduce(k, Fraction(beta))
    if k == 2:
        # [zeta^b] theta^2 = q^{b^2/4} * (theta_int if b odd else theta_half-type); over E^2
        inv_e2 = _conv_mod(inv_euler_coeffs_mod(order, m), inv_euler_coeffs_mod(order, m), order, m)
        th = np.zeros(order, dtype=inv_e2.dtype)
        if beta == 1:
            th[0] = 1
            s = 1
            while s * s < order:
                th[s * s] += 2
                s += 1
        else:  # beta = 0
            s = 0
            while s * (s + 1) < order:
                th[s * (s + 1)] += 2
                s += 1
        return _conv_mod(th, inv_e2, order, m)
    if k == 3:
        if beta == Fraction(1, 2):
            inv_e = inv_euler_coeffs_mod(order, m)
            inv_e4 = _conv_mod(_conv_mod(inv_e, inv_e, order, m), _conv_mod(inv_e, inv_e, order, m), order, m)
            e3cubed = np.zeros(order, dtype=inv_e4.dtype)
            n = 0
            while 3 * n * (n + 1) // 2 < order:
                val = (2 * n + 1) if n % 2 == 0 else -(2 * n + 1)
                e3cubed[3 * n * (n + 1) // 2] = val % m if m else val
                n += 1
            out = _conv_mod(e3cubed, inv_e4, order, m) * 3
            if m:
                out %= m
            return out
        if beta == Fraction(3, 2):
            inv_e3 = inv_euler_coeffs_mod(order, m, scale=3)
            inv_e = inv_euler_coeffs_mod(order, m)
            inv_e1cubed = _conv_mod(_conv_mod(inv_e, inv_e, order, m), inv_e, order, m)
            e9cubed = np.zeros(order, dtype=inv_e3.dtype)
            n = 0
            while 9 * n * (n + 1) // 2 < order:
                val = (2 * n + 1) if n % 2 == 0 else -(2 * n + 1)
                e9cubed[9 * n * (n + 1) // 2] = val % m if m else val
                n += 1
            second = _conv_mod(_conv_mod(e9cubed, inv_e3, order, m), inv_e1cubed, order, m)
            out = inv_e3.copy()
            out[1:] = out[1:] + 9 * second[:-1]
            if m:
                out %= m
            return out
        raise BetaError("unexpected beta for k=3")
    if k in (4, 6):
        return _cpsi_mod_even_theta(k, int(beta), order, m)
    raise BetaError("no fast engine for k=%d" % k)


def _one_array(order, m):
    np = _np()
    out = np.zeros(order, dtype=object if m is None else np.int64)
    out[0] = 1
    return out


def _theta_pair_products(order4: int, m: int | None):
    """Products of the two one-dimensional theta kernels on grid 4.

    T0 = sum q^{s^2} (s in Z), Th = sum q^{s^2} (s in 1/2+Z) = 2 q^{1/4} sum q^{t(t+1)};
    arrays are indexed by 4*exponent.
    """
    np = _np()
    dt = object if m is None else np.int64
    t0 = np.zeros(order4, dtype=dt)
    s = 0
    while 4 * s * s < order4:
        t0[4 * s * s] += 1 if s == 0 else 2
        s += 1
    th = np.zeros(order4, dtype=dt)
    t = 0
    while 4 * t * (t + 1) + 1 < order4:
        th[4 * t * (t + 1) + 1] += 2
        t += 1
    return t0, th


def _cpsi_mod_even_theta(k: int, beta: int, order: int, m: int | None):
    """k in {4, 6}: assemble [zeta^beta] theta^k from shifted products of 1-dim kernels."""
    np = _np()
    order4 = 4 * (order + k // 2) + 1
    t0, th = _theta_pair_products(order4, m)
    prods = {}

    def prod_of(parities):
        key = tuple(sorted(parities))
        if key not in prods:
            arr = _one_array(order4, m)
            for p_ in key:
                arr = _conv_mod(arr, t0 if p_ else th, order4, m)
            prods[key] = arr
        return prods[key]

    acc = np.zeros(order4, dtype=t0.dtype)
    jmax = isqrt(order4) + 1
    if k == 4:
        pairs = [(j,) for j in range(-jmax, jmax + 1)]
        for (j,) in pairs:
            j2 = beta - j
            shift = j * j + j2 * j2  # q^{shift/4}
            if shift >= order4:
                continue
            arr = prod_of((j % 2, j2 % 2))
            seg = order4 - shift
            acc[shift:] += arr[:seg]
    else:
        for j1 in range(-jmax, jmax + 1):
            if j1 * j1 >= order4:
                continue
            for j2 in range(-jmax, jmax + 1):
                j3 = beta - j1 - j2
                shift = j1 * j1 + j2 * j2 + j3 * j3
                if shift >= order4:
                    continue
                arr = prod_of((j1 % 2, j2 % 2, j3 % 2))
                seg = order4 - shift
                acc[shift:] += arr[:seg]
        if m:
            acc %= m
    if m:
        acc %= m
    # scaled-4 exponents all sit at k/2 mod 4; dividing by q^{k/8} E^k makes them integers
    start = k // 2
    assert not any(int(x) for i, x in enumerate(acc) if i % 4 != start % 4)
    dense = acc[start::4][:order].copy()
    inv_e = inv_euler_coeffs_mod(order, m)
    inv_ek = _one_array(order, m)
    for _ in range(k):
        inv_ek = _conv_mod(inv_ek, inv_e, order, m)
    return _conv_mod(dense, inv_ek, order, m)
