import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poincare_series.multisection import (
    TargetSeries,
    multisect,
    phi,
    phi_roots_of_unity,
    phi_roots_of_unity_check,
    psi_via_shift,
    ray_coefficients,
)
from poincare_series.series import (
    FactoredRational,
    GeometricFactor,
    TruncatedLaurentSeries,
    TruncationWindow,
    expand,
)

P = TruncatedLaurentSeries.polynomial


def geometric(power, hi):
    r = FactoredRational(P({(0,): 1}), (GeometricFactor((1,), power),))
    return expand(r, TruncationWindow((0,), (hi,)))


def test_all_ones_input():
    assert multisect(geometric(1, 10), (2,), 5) == (1, 1, 1, 1, 1, 1)


def test_squared_geometric():
    # coefficient of z^m in 1/(1-z)^2 is m+1
    f = geometric(2, 9)
    assert [f.coefficient((m,)) for m in range(10)] == [m + 1 for m in range(10)]
    assert multisect(f, (3,), 3) == (1, 4, 7, 10)


def test_bivariate_pure_ray():
    r = FactoredRational.from_monomials(P({(0, 0): 1}), [(1, 0), (1, 2)])
    f = expand(r, TruncationWindow((0, 0), (4, 8)))
    # brute force: t^a (t z^2)^b has exponent (a+b, 2b); on the ray (s, 2s) only a = 0
    assert multisect(f, (1, 2), 4) == (1, 1, 1, 1, 1)


def test_single_monomial():
    assert multisect(P({(2, 1): 1}), (2, 1), 3) == (0, 1, 0, 0)


def test_window_too_small():
    with pytest.raises(ValueError):
        multisect(geometric(1, 5), (2,), 3)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        multisect(P({(0, 0): 1}), (1, -1), 2)


def test_ray_reads_negative_exponents():
    f = P({(0,): 2, (-2,): 5, (-4,): 7})
    assert ray_coefficients(f, (-2,), 2) == (2, 5, 7)


def test_zero_index_repeats_constant():
    assert multisect(P({(0, 0): 3, (1, 0): 4}), (0, 0), 3) == (3, 3, 3, 3)


def test_phi_non_multiple_is_zero():
    assert phi(P({(3,): 1}), 2, 4).is_zero()


def test_phi_constant():
    for n in range(1, 6):
        assert phi(P({(0,): 1}), n, 3) == (1, 0, 0, 0)


def test_phi_reads_even_coefficients():
    f = P({(0,): 1, (1,): 1, (2,): 2, (3,): 3, (4,): 5})
    assert phi(f, 2, 2) == (1, 2, 5)


@settings(max_examples=40)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=25),
    st.lists(st.integers(-20, 20), min_size=1, max_size=25),
    st.integers(-5, 5),
    st.integers(-5, 5),
    st.integers(1, 6),
)
def test_phi_linear(fa, fb, a, b, n):
    F = P({(i,): c for i, c in enumerate(fa)}, arity=1)
    G = P({(i,): c for i, c in enumerate(fb)}, arity=1)
    N = 24 // n
    lhs = phi(F * a + G * b, n, N)
    assert lhs == phi(F, n, N) * a + phi(G, n, N) * b


def test_psi_shift_geometric():
    R = geometric(1, 40)
    assert psi_via_shift(R, 1, 3, 1, 10) == (1,) * 11


def test_psi_shift_n_less_than_k():
    R = P({(1,): 4, (3,): -2})
    assert psi_via_shift(R, 2, 1, 3, 5).is_zero()
    # the s = 0 term always survives: it is the constant term of R
    R0 = P({(0,): 7, (3,): -2})
    assert psi_via_shift(R0, 2, 1, 3, 5) == (7, 0, 0, 0, 0, 0)


def test_psi_shift_degenerate_zero_constant():
    R = P({(1,): 3, (2,): 1})
    fast = psi_via_shift(R, 2, 4, 4, 5)
    assert fast.is_zero()
    num = P({(0, 1): 3, (0, 2): 1})
    direct = multisect(
        expand(FactoredRational(num, (GeometricFactor((2, 4)),)), TruncationWindow((0, 0), (10, 20))),
        (2, 4),
        5,
    )
    assert direct == fast


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-50, 50), min_size=1, max_size=31),
    st.integers(1, 5),
    st.integers(1, 10),
    st.integers(0, 10),
)
def test_psi_shift_matches_bivariate(coeffs, m, n, k):
    R = P({(i,): c for i, c in enumerate(coeffs)}, arity=1)
    N = 10
    num = P({(0, i): c for i, c in enumerate(coeffs)}, arity=2)
    f = FactoredRational(num, (GeometricFactor((m, k)),))
    direct = multisect(expand(f, TruncationWindow((0, 0), (m * N, n * N))), (m, n), N)
    assert psi_via_shift(R, m, n, k, N) == direct


def test_roots_of_unity_examples():
    f = P({(i,): 1 for i in range(5)})
    assert phi_roots_of_unity_check(f, 2, 1e-9)
    assert phi(f, 2, 2) == (1, 1, 1)
    assert phi_roots_of_unity_check(P({(1,): 1}), 2, 1e-9)
    assert abs(phi_roots_of_unity(P({(1,): 1}), 2)).max() < 1e-12
    for n in range(1, 6):
        assert phi_roots_of_unity_check(P({(0,): 7}), n, 1e-9)


def test_roots_of_unity_detects_mismatch():
    # a tolerance below float resolution of the inputs still passes; a negative one cannot
    f = P({(0,): 1, (2,): 1})
    assert not phi_roots_of_unity_check(f, 2, -1.0)


def test_roots_of_unity_random():
    rng = random.Random(7)
    for _ in range(10):
        f = P({(i,): rng.randint(-100, 100) for i in range(rng.randint(0, 40) + 1)}, arity=1)
        for n in range(1, 9):
            assert phi_roots_of_unity_check(f, n, 1e-9)


def test_target_series_order_mismatch():
    with pytest.raises(ValueError):
        TargetSeries((1, 2)) + TargetSeries((1,))
