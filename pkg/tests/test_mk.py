import pytest

from frobq.mk import MkError, coset_reps, m_k, m_k_bruteforce

TABLE = {1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 2, 9: 2, 10: 1, 11: 1, 12: 2, 13: 1, 14: 1, 15: 2, 16: 2, 17: 1, 18: 2}


def test_coset_counts():
    cs1 = coset_reps(1)
    assert cs1.representative_count() == 1
    cs24 = coset_reps(24)
    assert cs24.full_index() == 9216
    assert cs24.representative_count() == 9216
    for n in (2, 6, 8, 12, 36, 48, 72, 120, 144, 192):
        cs = coset_reps(n)
        assert cs.representative_count() == cs.full_index(), n


def test_coset_disjointness_level_24():
    cs = coset_reps(24)
    reps = list(cs.full_representatives())
    assert len(reps) == 9216
    fingerprints = {tuple(x % 24 for x in m) for m in reps}
    assert len(fingerprints) == 9216
    for a, b, c, d in reps[:200]:
        assert a * d - b * c == 1


def test_m_k_exact_small():
    for k in (1, 2, 3, 4):
        assert m_k(k, "exact") == TABLE[k], k


def test_m_k_exact_equals_float():
    for k in (1, 2, 3, 4):
        assert m_k(k, "exact") == m_k(k, "float"), k


def test_m_k_bruteforce_oracle():
    # literal coset-by-coset trace sum agrees with the collapsed computation
    for k in (1, 2):
        assert m_k_bruteforce(k) == m_k(k, "float") == TABLE[k]


def test_m_k_table_float():
    for k, want in TABLE.items():
        if k <= 12:
            assert m_k(k, "float") == want, k


def test_m_k_positive_integer_and_irreducible_list():
    for k in (1, 2, 3, 4, 5, 6, 7):
        assert m_k(k, "float") == 1  # irreducible cases in range
    assert m_k(8, "float") == 2


def test_bad_mode():
    with pytest.raises(MkError):
        m_k(2, "fancy")
