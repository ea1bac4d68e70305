"""Property-based invariants for the arithmetic substrate."""

from hypothesis import given, settings
from hypothesis import strategies as st

from frobq.cyclo import CycloNumber, euler_phi, kronecker
from frobq.qseries import FracQSeries, u_operator

small_ints = st.integers(min_value=-80, max_value=80)


@given(small_ints, small_ints, small_ints)
@settings(max_examples=150, deadline=None)
def test_kronecker_complete_multiplicativity(m, n1, n2):
    if n1 == 0 or n2 == 0:
        return
    assert kronecker(m, n1 * n2) == kronecker(m, n1) * kronecker(m, n2)


@given(small_ints, small_ints)
@settings(max_examples=150, deadline=None)
def test_kronecker_upper_multiplicativity(m1, n):
    # (m1 m2 / n) = (m1/n)(m2/n); fix m2 = 3
    assert kronecker(m1 * 3, n) == kronecker(m1, n) * kronecker(3, n)


cyclo_strategy = st.builds(
    lambda n, coeffs, den: CycloNumber(n, (coeffs * euler_phi(n))[: euler_phi(n)], den),
    st.sampled_from([1, 3, 4, 8, 12]),
    st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
    st.integers(min_value=1, max_value=4),
)


@given(cyclo_strategy, cyclo_strategy)
@settings(max_examples=100, deadline=None)
def test_cyclo_conjugation_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()


@given(cyclo_strategy)
@settings(max_examples=100, deadline=None)
def test_cyclo_abs2_nonnegative_rational_on_real_axis(a):
    # z conj(z) is fixed under conjugation
    c = a.abs2()
    assert c.conj() == c


@given(st.integers(min_value=0, max_value=200), st.sampled_from([5, 7]), st.sampled_from([1, 2, 24]))
@settings(max_examples=100, deadline=None)
def test_u_operator_monomial_survival(e, p, step):
    f = FracQSeries(1, {e: 1}, e + 1)
    out = u_operator(f, p, step)
    if e % p == 0:
        assert out.terms == {e // p: 1}
    else:
        assert out.is_zero()
