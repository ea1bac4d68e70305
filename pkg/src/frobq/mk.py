"""Norm of the representation character: coset layering and the trace sum.

The full coset sum over T-powers is collapsed analytically: summing
|Tr(D^j M)|^2 over a full period of a diagonal D of N-th roots of unity
equals N times the sum of M_ll conj(M_l'l') over index pairs with equal
diagonal entries.  The Gamma_0 layer uses the closed permutation law, so no
generator words appear in the hot loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclo import CycloNumber, factorize
from .frobgen import beta_set
from .vvrep import p_beta, rho_k_generators, t_beta


class MkError(ValueError):
    pass


@dataclass
class CosetSystem:
    n: int
    a_values: list  # coprime residues a with completions (b_a, d_a)
    script_n: list  # the set of n indices for the two-S tails
    tail_counts: dict  # n -> number of trailing T powers

    def gamma0_index(self) -> int:
        out = self.n
        for p in factorize(self.n):
            out = out * (p + 1) // p
        return out

    def full_index(self) -> int:
        out = self.n**3
        for p in factorize(self.n):
            out = out * (p * p - 1) // (p * p)
        return out

    def representative_count(self) -> int:
        return self.n * len(self.a_values) * sum(1 for _ in self.tails())

    def tails(self):
        """Descriptors ('I',), ('ST', i), ('STST', n, i) of the right layer."""
        yield ("I",)
        if self.n == 1:
            return  # level one: a single coset
        for i in range(self.n):
            yield ("ST", i)
        for x in self.script_n:
            for i in range(self.tail_counts[x]):
                yield ("STST", x, i)

    def full_representatives(self):
        """All T^j gamma_a tail matrices, materialized (use only for small n)."""
        s = (0, -1, 1, 0)

        def mul(m1, m2):
            return (
                m1[0] * m2[0] + m1[1] * m2[2],
                m1[0] * m2[1] + m1[1] * m2[3],
                m1[2] * m2[0] + m1[3] * m2[2],
                m1[2] * m2[1] + m1[3] * m2[3],
            )

        def t_pow(e):
            return (1, e, 0, 1)

        for tail in self.tails():
            if tail[0] == "I":
                right = (1, 0, 0, 1)
            elif tail[0] == "ST":
                right = mul(s, t_pow(tail[1]))
            else:
                right = mul(mul(mul(s, t_pow(tail[1])), s), t_pow(tail[2]))
            for a, b_a, d_a in self.a_values:
                mid = mul((a, b_a, self.n, d_a), right)
                for j in range(self.n):
                    yield mul(t_pow(j), mid)


def coset_reps(n: int) -> CosetSystem:
    """Layered representatives of the principal-congruence coset space at level n."""
    if n < 1:
        raise MkError("level must be positive")
    a_values = []
    for a in range(n):
        if gcd(a, n) == 1:
            d_a = pow(a, -1, n) if n > 1 else 1
            b_a = (a * d_a - 1) // n
            a_values.append((a, b_a, d_a))
    if n == 1:
        a_values = [(1, 0, 1)]
    script_n = []
    tail_counts = {}
    for d in sorted(factorize_divisors(n)):
        if d in (1, n):
            continue
        g = gcd(d, n // d)
        # representatives of the units mod g, chosen below n/d and coprime to n/d
        seen = set()
        for x in range(1, n // d + 1):
            if gcd(x, n // d) != 1:
                continue
            r = x % g if g > 1 else 1
            if gcd(r if g > 1 else 1, g) != 1:
                continue
            if r in seen:
                continue
            seen.add(r)
            idx = d * x
            script_n.append(idx)
            tail_counts[idx] = n // gcd(n, idx * idx)
    return CosetSystem(n, a_values, script_n, tail_counts)


def factorize_divisors(n: int):
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return out


def _diag_classes(k: int):
    """Indices of the beta set grouped by equal T-diagonal value."""
    groups: dict = {}
    for i, b in enumerate(beta_set(k)):
        key = (Fraction(k, 12) - b * b / (2 * k)) % 1
        groups.setdefault(key, []).append(i)
    return list(groups.values())


def _pair_sum_exact(diag, classes) -> CycloNumber:
    total = CycloNumber.zero()
    for cls in classes:
        s = CycloNumber.zero()
        for l in cls:
            s = s + diag[l]
        total = total + s * s.conj()
    return total


def _pair_sum_float(diag, classes) -> float:
    total = 0.0
    for cls in classes:
        s = 0j
        for l in cls:
            s += diag[l]
        total += abs(s) ** 2
    return total


def m_k(k: int, mode: str = "exact") -> int:
    """Norm of the representation character; 1 exactly when the representation is irreducible."""
    if mode not in ("exact", "float"):
        raise MkError("mode must be exact or float")
    n = 24 * k
    system = coset_reps(n)
    betas = beta_set(k)
    dim = len(betas)
    classes = _diag_classes(k)
    tmat, smat = rho_k_generators(k)
    # exact T-diagonal powers and the two-S middle blocks
    t_diag = [tmat[i, i] for i in range(dim)]
    perms = []
    for a, b_a, d_a in system.a_values:
        gamma = (a, b_a, n, d_a)
        perm = [betas.index(t_beta(k, b, gamma)) for b in betas]
        vals = [p_beta(k, b, gamma) for b in betas]
        perms.append((perm, vals))
    if mode == "float":
        s_c = [[complex(smat[i, j]) for j in range(dim)] for i in range(dim)]
        t_c = [complex(x) for x in t_diag]
        perms_c = [(perm, [complex(v) for v in vals]) for perm, vals in perms]
        x_blocks = {}
        for x in system.script_n:
            tp = [t_c[w] ** x for w in range(dim)]
            x_blocks[x] = [
                [sum(s_c[u][w] * tp[w] * s_c[w][v] for w in range(dim)) for v in range(dim)]
                for u in range(dim)
            ]
        total = 0.0
        for perm, vals in perms_c:
            diag_i = [vals[l] if perm[l] == l else 0j for l in range(dim)]
            total += n * _pair_sum_float(diag_i, classes)
            diag_s = [vals[l] * s_c[perm[l]][l] for l in range(dim)]
            total += n * n * _pair_sum_float(diag_s, classes)
            for x in system.script_n:
                blk = x_blocks[x]
                diag_b = [vals[l] * blk[perm[l]][l] for l in range(dim)]
                total += n * system.tail_counts[x] * _pair_sum_float(diag_b, classes)
        value = total / system.full_index()
        nearest = round(value)
        if abs(value - nearest) > 1e-6:
            raise MkError("float mode could not round safely: %r" % value)
        return int(nearest)
    # exact mode
    x_blocks = {}
    for x in system.script_n:
        tp = [t_diag[w] ** x for w in range(dim)]
        x_blocks[x] = [
            [_sum_exact(smat[u, w] * tp[w] * smat[w, v] for w in range(dim)) for v in range(dim)]
            for u in range(dim)
        ]
    total = CycloNumber.zero()
    zero = CycloNumber.zero()
    for perm, vals in perms:
        diag_i = [vals[l] if perm[l] == l else zero for l in range(dim)]
        total = total + _pair_sum_exact(diag_i, classes) * n
        diag_s = [vals[l] * smat[perm[l], l] for l in range(dim)]
        total = total + _pair_sum_exact(diag_s, classes) * (n * n)
        for x in system.script_n:
            blk = x_blocks[x]
            diag_b = [vals[l] * blk[perm[l]][l] for l in range(dim)]
            total = total + _pair_sum_exact(diag_b, classes) * (n * system.tail_counts[x])
    value = total * Fraction(1, system.full_index())
    if not value.is_rational():
        raise MkError("exact character norm is not rational; bug upstream")
    rat = value.rational_value()
    if rat.denominator != 1 or rat <= 0:
        raise MkError("character norm must be a positive integer, got %s" % rat)
    return int(rat)


def _sum_exact(items) -> CycloNumber:
    total = CycloNumber.zero()
    for x in items:
        total = total + x
    return total


def m_k_bruteforce(k: int) -> int:
    """Literal |Tr|^2 sum over every materialized coset representative (small k only).

    Independent oracle for the collapsed computation: builds each representative
    as a T-power word through generator matrices numerically.
    """
    n = 24 * k
    system = coset_reps(n)
    betas = beta_set(k)
    dim = len(betas)
    tmat, smat = rho_k_generators(k)
    t_c = [complex(tmat[i, i]) for i in range(dim)]
    s_c = [[complex(smat[i, j]) for j in range(dim)] for i in range(dim)]

    def matmul(a, b):
        return [[sum(a[i][w] * b[w][j] for w in range(dim)) for j in range(dim)] for i in range(dim)]

    def t_pow_mat(e):
        return [[t_c[i] ** e if i == j else 0j for j in range(dim)] for i in range(dim)]

    total = 0.0
    for perm_data, (a, b_a, d_a) in zip(range(len(system.a_values)), system.a_values):
        gamma = (a, b_a, n, d_a)
        mid = [[0j] * dim for _ in range(dim)]
        for i, b in enumerate(betas):
            mid[i][betas.index(t_beta(k, b, gamma))] = complex(p_beta(k, b, gamma))
        for tail in system.tails():
            if tail[0] == "I":
                right = mid
            elif tail[0] == "ST":
                right = matmul(mid, matmul(s_c, t_pow_mat(tail[1])))
            else:
                right = matmul(mid, matmul(matmul(matmul(s_c, t_pow_mat(tail[1])), s_c), t_pow_mat(tail[2])))
            for j in range(n):
                tr = sum(t_c[l] ** j * right[l][l] for l in range(dim))
                total += abs(tr) ** 2
    value = total / system.full_index()
    return int(round(value))
