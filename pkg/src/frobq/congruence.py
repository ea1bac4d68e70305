"""Congruence pipelines: gamma search, U-sequences, appendix relation checks, scanners.

Progression offsets are always solved from 24 k delta = 12 beta^2 - 2 k^2 mod p^m
rather than hard-coded, so new families reuse the same machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .frobgen import cpsi, cpsi3_closed, cpsi_mod, lambda_reduce
from .hecke import u_p_prime_params
from .qseries import FracQSeries, TruncationError, eta_quotient, u_operator
from .vvrep import quotient_multiplier, t_beta


class NoGammaError(ValueError):
    """The two indices sit in different permutation classes."""


class PipelineError(ValueError):
    pass


# ---------------------------------------------------------------------------
# gamma search


@dataclass(frozen=True)
class GammaSearchSpec:
    p: int
    k: int
    beta: Fraction
    beta_p: Fraction
    r: int = 0
    r_e: int = 0

    def resolved(self) -> "GammaSearchSpec":
        r, r_e = u_p_prime_params(self.k, self.beta, self.p)
        return GammaSearchSpec(self.p, self.k, Fraction(self.beta), Fraction(self.beta_p), r, r_e)


def find_gamma(spec: GammaSearchSpec):
    """Deterministic matrix transporting one partition-series quotient to another.

    Smallest admissible multiplier a, then smallest admissible c, then (b, d)
    by modular inversion.  Postconditions (index map, trivial multiplier) are
    asserted before returning.
    """
    spec = spec.resolved()
    p, k = spec.p, spec.k
    beta, beta_p = Fraction(spec.beta), Fraction(spec.beta_p)
    if gcd(int(2 * beta), k) != gcd(int(2 * beta_p), k):
        raise NoGammaError("no transporting matrix exists across classes")
    tb, tbp = int(2 * beta), int(2 * beta_p)
    two_k = 2 * k

    def pick_a(target):
        for a in range(1, two_k + 1):
            if gcd(a, two_k) == 1 and (a * tb - target) % two_k == 0:
                return a
        return None

    a = pick_a(tbp)
    case_b = False
    if a is None:
        if k % 2 == 0:
            a = pick_a((tbp + k) % two_k)
            case_b = True
        if a is None:
            raise NoGammaError("no admissible multiplier found")
    if a % p == 0:
        a += two_k
    if case_b:
        base_c = p * p * k  # needs p^2 k | c but 2k not | c, so the cofactor must stay odd
        step = 2
    else:
        base_c = 2 * p * p * k
        step = 1
    j = 1
    while gcd(a, base_c * j) != 1:
        j += step
    c = base_c * j
    if case_b:
        assert c % (2 * k) != 0
    r = spec.r
    d = pow(a, -1, r * c)
    b = (a * d - 1) // c
    assert b % r == 0
    gamma = (a, b, c, d)
    # postconditions
    assert t_beta(k, beta, gamma) == lambda_reduce(k, beta_p), "index map postcondition failed"
    got_bp, mult = quotient_multiplier(k, beta, p * p, gamma)
    assert mult == 1, "multiplier is not trivial"
    return gamma


def atkin_lehner_gamma(k: int, p: int):
    """(1 0; p^2 k 1) for k = 2 mod 4, with its exact involution decomposition verified."""
    if k % 4 != 2:
        raise ValueError("needs k = 2 mod 4")
    if p < 5:
        raise ValueError("needs p >= 5 prime")
    n = p * p * k
    gamma = (1, 0, n, 1)
    h = Fraction(1, 2)
    a_mat = (Fraction(1), -h, Fraction(0), Fraction(1))
    w_mat = (Fraction(2 + n), Fraction(2) + Fraction(n, 2), Fraction(2 * n), Fraction(n + 2))

    def mul(m1, m2):
        return (
            m1[0] * m2[0] + m1[1] * m2[2],
            m1[0] * m2[1] + m1[1] * m2[3],
            m1[2] * m2[0] + m1[3] * m2[2],
            m1[2] * m2[1] + m1[3] * m2[3],
        )

    prod = mul(mul(a_mat, w_mat), a_mat)
    assert prod == (Fraction(2), Fraction(0), Fraction(2 * n), Fraction(2)), "decomposition identity failed"
    det = w_mat[0] * w_mat[3] - w_mat[1] * w_mat[2]
    assert det == 4, "middle matrix must have determinant 4"
    # Atkin-Lehner structure at Q = 4, level N = 2 p^2 k: Q || N and W = (Qx y; Nz Qw)
    lev = 2 * n
    assert lev % 4 == 0 and gcd(4, lev // 4) == 1, "4 must exactly divide the level"
    x = w_mat[0] / 4
    w = w_mat[3] / 4
    assert x.denominator == 1 and w.denominator == 1
    return gamma, w_mat


# ---------------------------------------------------------------------------
# base modular functions (k = 3, p = 5 pipeline)


@lru_cache(maxsize=8)
def base_functions(order: int) -> dict:
    """Named exact series {A, t, x, y, p0, p1, A3} valid below q^order."""
    n24 = 24 * (order + 8)
    t = eta_quotient([(5, 6), (1, -6)], n24).regrid(1)
    x = eta_quotient([(15, 5), (5, 1), (3, -1), (1, -5)], n24).regrid(1)
    y = eta_quotient([(5, 2), (1, 2), (15, -2), (3, -2)], n24).regrid(1)
    a_fn = eta_quotient([(25, 4), (3, 3), (75, -3), (1, -4)], n24).regrid(1)
    p0 = 6 * x * y + 27 * x + (y - 3) * t
    p1 = 12 * x * y + 81 * x + y + (12 * y - 9) * t
    cp = cpsi3_closed(Fraction(3, 2), order + 8)
    denom = cp.scale_q(25).truncate(order + 4)
    a3 = cp.shift_q(3).truncate(order + 4).div_by_unit(denom)
    return {
        "A": a_fn.truncate(order),
        "t": t.truncate(order),
        "x": x.truncate(order),
        "y": y.truncate(order),
        "p0": p0.truncate(order),
        "p1": p1.truncate(order),
        "A3": a3.truncate(order),
    }


def u5(f: FracQSeries) -> FracQSeries:
    return u_operator(f, 5, 24 if f.grid % 24 == 0 else 1)


def u0(f: FracQSeries, a_fn: FracQSeries) -> FracQSeries:
    return u5(a_fn * f)


# ---------------------------------------------------------------------------
# appendix relation table


def _rhs(table, t, p0, p1, t_inv):
    """Assemble sum of c * t^n * (1 | p0 | p1) from (c, n, which) triples."""
    out = FracQSeries.zero(1)
    for c, n, which in table:
        term = FracQSeries.const(c)
        if n > 0:
            term = term * t**n
        elif n < 0:
            term = term * t_inv ** (-n)
        if which == 0:
            term = term * p0
        elif which == 1:
            term = term * p1
        out = out + term
    return out


APPENDIX_RELATIONS = [
    # group I: U0 on powers of 1/t
    ("U0(1)", 0, 0, [(5**7, 3, None), (9 * 5**4, 2, None), (9 * 5, 1, None), (5**5, 2, 1), (8 * 5**2, 1, 1), (1, 0, 1)]),
    ("U0(t^-1)", 0, -1, [(-(5**2), 1, None), (-2, 0, 1)]),
    ("U0(t^-2)", 0, -2, [(5**5, 2, None), (6 * 5**2, 1, None), (2 * 5**3, 1, 1), (4 * 5, 0, 1)]),
    ("U0(t^-3)", 0, -3, [(-9 * 5**5, 2, None), (-9 * 5**3, 1, None), (1, 0, None), (5**6, 2, 1), (-2 * 5**4, 1, 1), (-37 * 5, 0, 1)]),
    (
        "U0(t^-4)",
        0,
        -4,
        [
            (5**11, 4, None),
            (3 * 5**9, 3, None),
            (27 * 5**6, 2, None),
            (79 * 5**3, 1, None),
            (-3 * 5, 0, None),
            (-(5**8), 2, 1),
            (-12 * 5**4, 1, 1),
            (67 * 5**2, 0, 1),
        ],
    ),
    # group II: U0 on p0 t^k
    ("U0(p0)", 2, 0, [(5**9, 4, 1), (5**8, 3, 1), (8 * 5**5, 2, 1), (4 * 5**3, 1, 1), (1, 0, 1)]),
    ("U0(p0 t^-1)", 2, -1, [(-1, 0, 1)]),
    ("U0(p0 t^-2)", 2, -2, [(5**3, 1, 1), (14, 0, 1)]),
    ("U0(p0 t^-3)", 2, -3, [(5**6, 2, 1), (-26 * 5, 0, 1)]),
    ("U0(p0 t^-4)", 2, -4, [(-(5**9), 3, 1), (-38 * 5**6, 2, 1), (-38 * 5**4, 1, 1), (228 * 5, 0, 1)]),
    # group III: U1 on powers of 1/t
    ("U1(1)", 1, 0, [(1, 0, None)]),
    ("U1(t^-1)", 1, -1, [(-(5**2), 1, None), (-6, 0, None)]),
    ("U1(t^-2)", 1, -2, [(-(5**5), 2, None), (54, 0, None)]),
    ("U1(t^-3)", 1, -3, [(-(5**8), 3, None), (-102 * 5, 0, None)]),
    ("U1(t^-4)", 1, -4, [(-(5**11), 4, None), (966 * 5, 0, None)]),
    # group IV: U1 on p1 t^k
    (
        "U1(p1)",
        3,
        0,
        [
            (-18 * 5**7, 3, None),
            (-234 * 5**4, 2, None),
            (-126 * 5**2, 1, None),
            (5**9, 3, 0),
            (14 * 5**6, 2, 0),
            (44 * 5**3, 1, 0),
            (2 * 5, 0, 0),
        ],
    ),
    ("U1(p1 t^-1)", 3, -1, [(-18, 0, None), (5, 0, 0)]),
    ("U1(p1 t^-2)", 3, -2, [(126, 0, None), (5**4, 1, 0)]),
    ("U1(p1 t^-3)", 3, -3, [(-234 * 5, 0, None), (5**7, 2, 0)]),
    (
        "U1(p1 t^-4)",
        3,
        -4,
        [
            (18 * 5**9, 3, None),
            (234 * 5**6, 2, None),
            (126 * 5**4, 1, None),
            (2268 * 5, 0, None),
            (-4 * 5**10, 3, 0),
            (-14 * 5**8, 2, 0),
            (-44 * 5**5, 1, 0),
            (-2 * 5**3, 0, 0),
            (1, -1, 0),
        ],
    ),
]


def verify_appendix_a(order: int = 60) -> dict:
    """Check all twenty displayed U-relations as exact series identities below q^order."""
    base = base_functions(5 * order + 30)
    a_fn, t, p0, p1 = base["A"], base["t"], base["p0"], base["p1"]
    t_inv = t.inverse_unit()
    results = {}
    for name, kind, tpow, rhs_table in APPENDIX_RELATIONS:
        lhs_arg = FracQSeries.const(1)
        if kind in (2,):
            lhs_arg = p0
        elif kind == 3:
            lhs_arg = p1
        if tpow:
            lhs_arg = lhs_arg * t_inv ** (-tpow)
        if kind in (0, 2):
            lhs = u0(lhs_arg, a_fn)
        else:
            lhs = u5(lhs_arg)
        rhs = _rhs(rhs_table, t, p0, p1, t_inv)
        lhs = lhs.truncate(order)
        rhs = rhs.truncate(order)
        results[name] = lhs.same_series(rhs)
    return results


# ---------------------------------------------------------------------------
# U-sequences


def l_sequence(alpha_max: int, order: int):
    """L_0 = 1, alternating U0/U1 iterates of the k=3, beta=1/2 pipeline."""
    base_order = (order + 8) * 5**alpha_max + 10
    base = base_functions(base_order)
    a_fn = base["A"]
    seq = [FracQSeries.const(1, trunc=base_order)]
    for i in range(1, alpha_max + 1):
        prev = seq[-1]
        nxt = u0(prev, a_fn) if i % 2 == 1 else u5(prev)
        seq.append(nxt)
    _require_order(seq[-1], order)
    return seq


def k_sequence(alpha_max: int, order: int):
    """Partner sequence driven by the second k=3 component."""
    base_order = (order + 8) * 5**alpha_max + 10
    base = base_functions(base_order)
    a3 = base["A3"]
    seq = [FracQSeries.const(1, trunc=base_order)]
    for i in range(1, alpha_max + 1):
        prev = seq[-1]
        nxt = u5(a3 * prev) if i % 2 == 1 else u5(prev)
        seq.append(nxt)
    _require_order(seq[-1], order)
    return seq


def _require_order(f: FracQSeries, order: int):
    bound = f.order_bound()
    if bound is not None and bound < order:
        raise TruncationError("sequence truncation exhausted: valid below %s, need %s" % (bound, order))


def lk_sequences_general(k: int, beta, beta_p, p: int, alpha_max: int, order: int):
    """The general transported pair of U_p' sequences for a same-class index pair."""
    beta, beta_p = Fraction(beta), Fraction(beta_p)
    r, r_e = u_p_prime_params(k, beta, p)
    if gcd(r, p) != 1:
        raise PipelineError("commutation needs gcd(r, p) = 1")
    base_order = (order + 4) * p ** alpha_max + p * p + 10

    def quotient_fn(b):
        expo = (p * p - 1) * (b * b / (2 * k) - Fraction(k, 12))
        if expo.denominator != 1:
            raise PipelineError("non-integral dilation exponent")
        pad = abs(int(expo)) + p * p + 8
        cp = cpsi(k, b, base_order + pad)
        den = cp.scale_q(p * p).truncate(base_order + 4)
        return cp.shift_q(int(expo)).truncate(base_order + 4).div_by_unit(den).truncate(base_order)

    a0 = quotient_fn(beta)
    a1 = quotient_fn(beta_p)
    ls, ks = [FracQSeries.const(1, trunc=base_order)], [FracQSeries.const(1, trunc=base_order)]
    for i in range(1, alpha_max + 1):
        if i % 2 == 1:
            ls.append(u_operator(a0 * ls[-1], p, r_e))
            ks.append(u_operator(a1 * ks[-1], p, r_e))
        else:
            ls.append(u_operator(ls[-1], p, r_e))
            ks.append(u_operator(ks[-1], p, r_e))
    _require_order(ls[-1], order)
    return ls, ks


# ---------------------------------------------------------------------------
# pbar: dual-route construction


def _partial_progression(series: FracQSeries, open_exp: Fraction, residue: int, order: int) -> FracQSeries:
    """From S = q^open_exp * sum s_n q^n return sum s_{3n+residue} q^n below q^order."""
    out = {}
    for n in range(order):
        c = series.coeff_at(open_exp + 3 * n + residue)
        if c:
            out[n] = c
    return FracQSeries(1, out, order)


def pbar(order: int = 60):
    """(pbar0, pbar1) by the U-recursions, cross-checked against the closed coefficient formulas."""
    big = 25 * (order + 4) + 40  # two nested U_5 steps eat a factor 25 of validity
    base = base_functions(big)
    t, a3 = base["t"], base["A3"]
    t_inv = t.inverse_unit()
    # recursion route
    p1bar = t * Fraction(-25, 2) - u5(a3 * t_inv) * Fraction(1, 2)
    p0bar = Fraction(18, 5) + u5(p1bar * t_inv) * Fraction(1, 5)
    p0bar = p0bar.truncate(order)
    p1bar = p1bar.truncate(order)
    # closed route; the 3n+r progression extraction reads three times deeper
    n24 = 24 * (3 * order + 40)
    cpsi32 = cpsi3_closed(Fraction(3, 2), order + 24)
    seq_a = eta_quotient([(1, 2), (5, 5)], n24)
    seq_b = eta_quotient([(1, 1), (5, -2)], n24)
    seq_ap = eta_quotient([(1, -1), (5, 8)], n24)
    seq_bp = eta_quotient([(1, -2), (5, 1)], n24)
    seq_cp = eta_quotient([(1, -3), (5, 6)], n24)
    b32 = _partial_progression(seq_b, Fraction(-3, 8), 2, order + 8)
    a32 = _partial_progression(seq_a, Fraction(9, 8), 2, order + 8)
    quot1 = eta_quotient([(5, 8), (1, -8)], n24)
    quot2 = eta_quotient([(5, 1), (1, -9)], n24)
    # quot1 carries q^{4/3}; folding the 2/3 shift makes every exponent integral
    closed0 = (9 * quot1.shift_q(Fraction(2, 3)) * b32) - 3 * quot2.shift_q(Fraction(7, 6)) * a32
    closed0 = closed0.truncate(order + 4).regrid(1)
    closed0 = closed0.div_by_unit(cpsi32.truncate(order + 4)) - 3 * base["t"].truncate(order + 4)
    closed0 = closed0.truncate(order)
    bp32 = _partial_progression(seq_bp, Fraction(1, 8), 2, order + 8)
    cp31 = _partial_progression(seq_cp, Fraction(9, 8), 1, order + 8)
    ap32 = _partial_progression(seq_ap, Fraction(13, 8), 2, order + 8)
    e_b = eta_quotient([(1, 2), (5, -2)], n24)
    e_c = eta_quotient([(1, -3), (5, -1)], n24)
    e_a = eta_quotient([(1, -5), (5, -3)], n24)
    one_plus = (1 + 12 * base["t"]).truncate(order + 6)
    term1 = 9 * e_b.shift_q(Fraction(4, 3)) * one_plus * bp32
    term2 = -12 * e_c.shift_q(Fraction(4, 3)) * cp31
    term3 = -9 * e_a.shift_q(Fraction(11, 6)) * ap32
    closed1 = (term1 + term2 + term3).truncate(order + 4).regrid(1)
    den5 = cpsi32.scale_q(5).truncate(order + 4)
    closed1 = closed1.div_by_unit(den5) - 9 * base["t"].truncate(order + 4)
    closed1 = closed1.truncate(order)
    if not p0bar.same_series(closed0):
        raise PipelineError("pbar0 recursion and closed form disagree")
    if not p1bar.same_series(closed1):
        raise PipelineError("pbar1 recursion and closed form disagree")
    for f in (p0bar, p1bar):
        for e, c in f.terms.items():
            if Fraction(c).denominator != 1:
                raise PipelineError("pbar coefficients must be integers")
    return p0bar, p1bar


# ---------------------------------------------------------------------------
# X-set decomposition


X_TABLES = {
    "X0": {"p": 0, "p_exp": lambda n: (5 * n) // 2, "p_min": 0, "t_exp": lambda n: (5 * n - 3) // 2, "t_min": 1},
    "X1": {"p": 1, "p_exp": lambda n: (5 * n - 1) // 2 if n >= 1 else 0, "p_min": 0, "t_exp": lambda n: (5 * n - 2) // 2, "t_min": 1},
}


@dataclass
class XDecomposition:
    table: str
    p_part: dict = field(default_factory=dict)  # n -> integer coefficient of p * t^n
    t_part: dict = field(default_factory=dict)  # n -> integer coefficient of t^n
    floor_margins: list = field(default_factory=list)  # (label, n, value, required_5adic, extra) per term

    def min_extra(self):
        return min((m[4] for m in self.floor_margins), default=None)

    def complies(self, extra: int = 0) -> bool:
        return all(m[4] >= extra for m in self.floor_margins)


def _v5(x: Fraction) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    n, v = x.numerator, 0
    while n % 5 == 0:
        n //= 5
        v += 1
    return v


def xset_decompose(f: FracQSeries, parity: int, t: FracQSeries, p_series: FracQSeries, max_n: int = 40) -> XDecomposition:
    """Resolve f inside the t / p*t^n span of the given parity table and check 5-adic floors.

    Since t^n and the matching p t^m share leading orders, coefficients are
    found by one exact overdetermined linear solve over the trusted window
    rather than by greedy peeling.  Raises when the system is inconsistent,
    i.e. f is not in the span within the window.
    """
    table = X_TABLES["X%d" % parity]
    dec = XDecomposition(table="X%d" % parity)
    if f.grid != 1:
        f = f.compact()
        if f.grid != 1:
            raise PipelineError("decomposition expects integer exponents")
    bound = f.order_bound()
    usable = int(bound) if bound is not None else max_n
    usable = min(usable, max_n)
    if f.is_zero():
        return dec
    v = int(f.valuation())
    if v < -1:
        raise PipelineError("valuation below every basis element")
    rows = list(range(v, usable))
    # top t-degree solvable from the window, leaving at least two consistency rows
    top = v + max((len(rows) - 3) // 2, 0)
    basis = []  # (label, n, series)
    t_pows = {0: FracQSeries.const(1)}

    def t_power(n):
        if n not in t_pows:
            t_pows[n] = t_power(n - 1) * t
        return t_pows[n]

    for m in range(max(v, 0), top + 1):
        if parity == 0:
            basis.append(("p", m, p_series * t_power(m)))
        else:
            basis.append(("p", m + 1, p_series * t_power(m + 1)))
        if m >= 1:
            basis.append(("t", m, t_power(m)))
    if parity == 1 and v <= -1:
        basis.insert(0, ("p", 0, p_series))
    if not basis:
        raise PipelineError("empty basis for the requested window")
    ncols = len(basis)
    mat = [[g.coeff_at(m) for (_, _, g) in basis] for m in rows]
    rhs = [f.coeff_at(m) for m in rows]
    # exact Gaussian elimination with consistency check on surplus rows
    cols = list(range(ncols))
    pivots = []
    r = 0
    for col in cols:
        piv = next((i for i in range(r, len(rows)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        rhs[r] = rhs[r] * inv
        for i in range(len(rows)):
            if i != r and mat[i][col] != 0:
                fct = mat[i][col]
                mat[i] = [x - fct * y for x, y in zip(mat[i], mat[r])]
                rhs[i] = rhs[i] - fct * rhs[r]
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rhs[i] != 0:
            raise PipelineError("nonzero residual: not inside the declared span (window top degree %d)" % top)
    coeffs = {}
    for row, col in pivots:
        coeffs[col] = rhs[row]
    for col, (label, n, _) in enumerate(basis):
        c = coeffs.get(col, Fraction(0))
        if c == 0:
            continue
        store = dec.p_part if label == "p" else dec.t_part
        store[n] = c
    for label, store in (("p", dec.p_part), ("t", dec.t_part)):
        exp_fn = table["%s_exp" % label]
        for n, coeff in sorted(store.items()):
            if Fraction(coeff).denominator != 1:
                raise PipelineError("non-integral decomposition coefficient")
            required = exp_fn(n)
            dec.floor_margins.append((label, n, coeff, required, _v5(coeff) - required))
    return dec


def decompose_t_p(f: FracQSeries, t: FracQSeries, p_series: FracQSeries, parity: int, max_n: int = 40):
    """Plain (t, p) table of a decomposable series: ({n: t-coeff}, {n: p-coeff})."""
    dec = xset_decompose(f, parity, t, p_series, max_n)
    return dict(dec.t_part), dict(dec.p_part)


def t_polynomial_of(f: FracQSeries, t: FracQSeries, max_deg: int = 60) -> dict:
    """Coefficients of f as a Laurent polynomial in t, by triangular peeling.

    The pure-t span has one element per leading order, so greedy peeling is
    sound here (unlike the mixed t / p case).  Raises when a residual survives
    or the degree cap is hit.
    """
    if f.grid != 1:
        f = f.compact()
        if f.grid != 1:
            raise PipelineError("expects integer exponents")
    bound = f.order_bound()
    if bound is None:
        raise PipelineError("needs a finite window")
    usable = int(bound)
    out = {}
    residual = f
    t_inv = t.inverse_unit()
    pows = {0: FracQSeries.const(1), 1: t, -1: t_inv}

    def t_pow(n):
        if n not in pows:
            pows[n] = (t_pow(n - 1) * t) if n > 0 else (t_pow(n + 1) * t_inv)
        return pows[n]

    while residual.terms:
        m = residual.valuation()
        if m is None:
            break
        m = int(m)
        if m > max_deg or m >= usable - 1:
            raise PipelineError("not a t-polynomial inside the window (order %d)" % m)
        g = t_pow(m)
        c = residual.coeff_at(m) / g.coeff_at(m)
        out[m] = c
        residual = (residual - g * c).truncate(usable - 1)
    return {n: c for n, c in out.items() if c != 0}


# ---------------------------------------------------------------------------
# congruence scanning


@dataclass
class CongruenceReport:
    family: str
    alpha: int
    modulus: int
    progression_modulus: int
    offset: int
    n_checked: int
    status: str
    failures: list = field(default_factory=list)
    inferred_constant: int | None = None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "alpha": self.alpha,
            "modulus": self.modulus,
            "progression_modulus": self.progression_modulus,
            "offset": self.offset,
            "n_checked": self.n_checked,
            "status": self.status,
            "failures": [list(f) for f in self.failures],
            "inferred_constant": self.inferred_constant,
        }


def progression_offset(k: int, beta, p: int, m: int) -> int:
    """Smallest nonnegative delta with 24 k delta = 12 beta^2 - 2 k^2 mod p^m."""
    beta = Fraction(beta)
    rhs = 12 * beta * beta - 2 * k * k
    mod = p**m
    rhs_int = rhs % mod
    assert rhs_int.denominator == 1, "offset congruence has non-integral right side"
    lhs = (24 * k) % mod
    return int(rhs_int) * pow(lhs, -1, mod) % mod


FAMILIES = {
    # family: (k, beta, p, progression exponent fn, divisibility exponent fn)
    "cpsi3-12": (3, Fraction(1, 2), 5, lambda a: a, lambda a: a // 2),
    "cpsi3-32": (3, Fraction(3, 2), 5, lambda a: a, lambda a: a // 2),
    "cphi2": (2, 1, 5, lambda a: a, lambda a: a),
    "cpsi2-1": (2, 1, 5, lambda a: a, lambda a: a),
    "cpsi2-0": (2, 0, 5, lambda a: a, lambda a: a),
}


def congruence_scan(family: str, alpha: int, n_max: int, order: int | None = None) -> CongruenceReport:
    """Direct divisibility scan of an arithmetic progression of partition counts."""
    if family not in FAMILIES:
        raise KeyError("unknown family %r" % family)
    k, beta, p, prog_fn, s_fn = FAMILIES[family]
    m = prog_fn(alpha)
    s = s_fn(alpha)
    delta = progression_offset(k, beta, p, m)
    prog_mod = p**m
    modulus = p**s
    need = prog_mod * n_max + delta + 1
    if need > 2_000_000:
        raise ValueError("scan needs series order %d; cap the range" % need)
    if order is not None and order < need:
        raise TruncationError("series order %d below required %d" % (order, need))
    arr = cpsi_mod(k, beta, need, modulus if s > 0 else None)
    failures = []
    for n in range(n_max + 1):
        v = int(arr[prog_mod * n + delta]) % modulus
        if v != 0:
            failures.append((n, v))
    return CongruenceReport(
        family=family,
        alpha=alpha,
        modulus=modulus,
        progression_modulus=prog_mod,
        offset=delta,
        n_checked=n_max + 1,
        status="pass" if not failures else "fail",
        failures=failures,
    )


def conjecture_scan(k: int, alpha: int, n_max: int, beta=None) -> CongruenceReport:
    """Scan the deg-7 conjecture families; the k=6 shape infers its constant first."""
    if k not in (4, 6):
        raise ValueError("conjecture scans exist for k in {4, 6}")
    p = 7
    m = 2 * alpha - 1
    if beta is None:
        beta = 1 if k == 4 else 0
    beta = Fraction(beta)
    delta = progression_offset(k, beta, p, m)
    prog_mod = p**m
    modulus = p**alpha
    eligible = [delta + prog_mod * j for j in range(n_max + 1)]
    cost = (49 if k == 6 else 1) * eligible[-1]
    if cost > 40_000:
        raise ValueError("conjecture scan needs series order %d; cap the range" % cost)
    if k == 4:
        need = eligible[-1] + 1
        arr = cpsi_mod(4, beta, need, modulus)
        failures = [(n, int(arr[n]) % modulus) for n in eligible if int(arr[n]) % modulus != 0]
        return CongruenceReport(
            family="conj-cpsi4",
            alpha=alpha,
            modulus=modulus,
            progression_modulus=prog_mod,
            offset=delta,
            n_checked=len(eligible),
            status="pass" if not failures else "fail",
            failures=failures,
        )
    shift = 24 - 4 * int(beta) ** 2
    need = 49 * eligible[-1] + shift + 1
    arr = cpsi_mod(6, beta, need, modulus)
    x_const = None
    failures = []
    checked = 0
    for n in eligible:
        lhs = int(arr[49 * n + shift]) % modulus
        rhs = int(arr[n]) % modulus
        if x_const is None:
            if gcd(rhs, p) != 1:
                continue
            x_const = lhs * pow(rhs, -1, modulus) % modulus
            checked += 1
            continue
        checked += 1
        if (lhs - x_const * rhs) % modulus != 0:
            failures.append((n, (lhs - x_const * rhs) % modulus))
    if failures:
        status = "fail"
    elif x_const is None:
        status = "undetermined"
    else:
        status = "pass"
    return CongruenceReport(
        family="conj-cpsi6",
        alpha=alpha,
        modulus=modulus,
        progression_modulus=prog_mod,
        offset=delta,
        n_checked=checked,
        status=status,
        failures=failures,
        inferred_constant=x_const,
    )
