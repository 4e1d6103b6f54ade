import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from poincare_series.series import (
    ExpansionRegion,
    FactoredRational,
    GeometricFactor,
    TruncatedLaurentSeries,
    TruncationWindow,
    expand,
    multiply_back,
    q_pochhammer,
    series_add,
    series_mul,
)

P = TruncatedLaurentSeries.polynomial


def trunc(terms, lo, hi):
    return TruncatedLaurentSeries(terms, TruncationWindow(lo, hi))


def sympy_terms(expr, gens):
    """Exponent -> coefficient map of a (Laurent) polynomial via sympy."""
    expr = sp.expand(expr)
    out = {}
    for term in sp.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        exp = tuple(int(powers.get(g, 0)) for g in gens)
        out[exp] = out.get(exp, 0) + int(coeff)
    return {k: v for k, v in out.items() if v}


# -- series_add ----------------------------------------------------------------


def test_add_cancellation():
    assert (P({(0,): 1, (1,): 1}) + P({(0,): 1, (1,): -1})).terms == {(0,): 2}


def test_add_zero_identity():
    a = P({(0,): 3, (2,): -1})
    assert series_add(a, P({}, arity=1)).terms == a.terms


def test_add_hand_sum():
    a = P({(0,): 1, (1,): -1, (2,): -1, (3,): 1})
    b = P({(1,): 1, (2,): 1})
    assert series_add(a, b).terms == {(0,): 1, (3,): 1}


def test_add_intersects_upper_bounds():
    a = trunc({(0,): 1, (5,): 1}, (0,), (5,))
    b = trunc({(0,): 1, (3,): 2}, (0,), (3,))
    s = a + b
    assert s.window.hi == (3,)
    assert s.terms == {(0,): 2, (3,): 2}


def test_arity_mismatch():
    with pytest.raises(ValueError):
        P({(0,): 1}) + P({(0, 0): 1})
    with pytest.raises(ValueError):
        series_mul(P({(0,): 1}), P({(0, 0): 1}))


# -- series_mul ----------------------------------------------------------------


def test_mul_geometric_identity():
    geom = trunc({(i,): 1 for i in range(9)}, (0,), (8,))
    prod = P({(0,): 1, (1,): -1}) * geom
    assert prod.window.hi == (8,)
    assert prod.terms == {(0,): 1}


def test_mul_square():
    a = P({(0, 0): 1, (1, 1): 1})
    assert (a * a).terms == {(0, 0): 1, (1, 1): 2, (2, 2): 1}


def test_mul_laurent_exponent_addition():
    assert (P({(-1, 2): 1}) * P({(1, 0): 1})).terms == {(0, 2): 1}


def test_mul_power_series_window_shrinks_by_shift():
    a = trunc({(0,): 1, (1,): 1}, (0,), (4,))
    b = trunc({(2,): 1}, (2,), (6,))
    assert (a * b).window == TruncationWindow((2,), (6,))


def test_mul_two_window_only_expansions_refused():
    w = TruncationWindow((-3,), (3,))
    a = TruncatedLaurentSeries({(0,): 1}, w, support_bounded=False)
    with pytest.raises(ValueError):
        a * a


def test_coefficient_outside_window():
    a = trunc({(0,): 1}, (0,), (4,))
    assert a.coefficient((-1,)) == 0
    with pytest.raises(KeyError):
        a.coefficient((5,))


exps2 = st.tuples(st.integers(0, 4), st.integers(0, 4))
poly2 = st.dictionaries(exps2, st.integers(-9, 9), min_size=1, max_size=6)


def _ps(terms, hi):
    terms = {x: c for x, c in terms.items() if all(v <= h for v, h in zip(x, hi))}
    return TruncatedLaurentSeries(terms, TruncationWindow((0, 0), hi))


@settings(max_examples=60, deadline=None)
@given(poly2, poly2, poly2, st.tuples(st.integers(2, 6), st.integers(2, 6)))
def test_mul_commutative_associative(a, b, c, hi):
    a, b, c = _ps(a, hi), _ps(b, hi), _ps(c, hi)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


# -- q_pochhammer --------------------------------------------------------------


def test_pochhammer_empty():
    assert q_pochhammer((1,), (1,), 0).terms == {(0,): 1}


def test_pochhammer_zz2():
    z = sp.Symbol("z")
    expected = sympy_terms((1 - z) * (1 - z**2), [z])
    assert expected == {(0,): 1, (1,): -1, (2,): -1, (3,): 1}
    assert q_pochhammer((1,), (1,), 2).terms == expected


def test_pochhammer_tz3():
    t, z = sp.symbols("t z")
    expected = sympy_terms((1 - t) * (1 - t * z) * (1 - t * z**2), [t, z])
    assert expected == {
        (0, 0): 1, (1, 0): -1, (1, 1): -1, (1, 2): -1,
        (2, 1): 1, (2, 2): 1, (2, 3): 1, (3, 3): -1,
    }
    assert q_pochhammer((1, 0), (0, 1), 3).terms == expected


def test_pochhammer_degenerate():
    with pytest.raises(ValueError):
        q_pochhammer((-2,), (1,), 3)


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.tuples(st.integers(1, 3), st.integers(-3, 3)), st.integers(1, 6))
def test_pochhammer_recurrence(a, q, n):
    last = tuple(x + (n - 1) * y for x, y in zip(a, q))
    if any(not any(x + i * y for x, y in zip(a, q)) for i in range(n)):
        return
    step = P({(0, 0): 1, last: -1})
    assert q_pochhammer(a, q, n) == q_pochhammer(a, q, n - 1) * step


# -- expand --------------------------------------------------------------------


def fr(num, monos):
    return FactoredRational.from_monomials(P(num, arity=len(next(iter(num)))), monos)


def test_expand_geometric():
    s = expand(fr({(0,): 1}, [(1,)]), TruncationWindow((0,), (4,)))
    assert s.terms == {(i,): 1 for i in range(5)}


def test_expand_inverse_variable():
    # 1/(1 - 1/z) = 1 - 1/(1 - z) = -z - z^2 - ... when z is small
    r = fr({(0,): 1}, [(-1,)])
    s = expand(r, TruncationWindow((-4,), (4,)))
    geom = expand(fr({(0,): 1}, [(1,)]), TruncationWindow((-4,), (4,)))
    identity = {x: -c for x, c in geom.terms.items()}
    identity[(0,)] += 1
    assert s.terms == {x: c for x, c in identity.items() if c}
    assert s.terms == {(i,): -1 for i in range(1, 5)}
    back = multiply_back(s, r)
    assert back.window.hi == (3,)
    assert back.terms == {(0,): 1}


def test_expand_cancelling_factor():
    r = fr({(0,): 1, (1,): -1}, [(1,), (2,)])
    s = expand(r, TruncationWindow((0,), (6,)))
    assert s.terms == {(0,): 1, (2,): 1, (4,): 1, (6,): 1}
    back = multiply_back(s, r)
    assert back.terms == {(0,): 1, (1,): -1}


def test_expand_matches_sympy_series():
    z = sp.Symbol("z")
    expr = (1 + 2 * z - z**3) / ((1 - z) ** 2 * (1 - z**3) * (1 - z**5))
    ser = sp.series(expr, z, 0, 21).removeO()
    expected = sympy_terms(ser, [z])
    r = FactoredRational(
        P({(0,): 1, (1,): 2, (3,): -1}),
        (GeometricFactor((1,), 2), GeometricFactor((3,)), GeometricFactor((5,))),
    )
    assert expand(r, TruncationWindow((0,), (20,))).terms == expected


def test_expand_unbounded_growth_direction():
    with pytest.raises(ValueError):
        expand(fr({(0,): 1}, [(1,)]), TruncationWindow((0,), (None,)))


def test_expand_unbounded_direction_without_growth_is_fine():
    # factor grows in t only; z is complete without an upper bound
    r = fr({(0, 0): 1, (0, 1): 1}, [(1, 0)])
    s = expand(r, TruncationWindow((0, 0), (3, None)))
    assert s.coefficient((3, 1)) == 1
    assert s.coefficient((2, 9)) == 0


def test_region_smallness():
    qouter = ExpansionRegion((1, 0))
    assert qouter.is_small((-5, 1))
    assert not qouter.is_small((5, -1))
    assert qouter.is_small((2, 0))
    with pytest.raises(ValueError):
        ExpansionRegion((0, 0))


def test_zero_factor_rejected():
    with pytest.raises(ValueError):
        GeometricFactor((0, 0))


factor_monos = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(any)


@settings(max_examples=80, deadline=None)
@given(
    st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(-5, 5), min_size=1, max_size=4),
    st.lists(factor_monos, min_size=1, max_size=4),
    st.permutations([0, 1]),
)
def test_expand_times_denominator_is_numerator(num, monos, order):
    r = fr(num, monos)
    region = ExpansionRegion(tuple(order))
    window = TruncationWindow((-12, -12), (12, 12))
    s = expand(r, window, region)
    back = multiply_back(s, r)
    want = {x: c for x, c in r.numerator.terms.items() if back.window.contains(x)}
    assert back.terms == want


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-5, 5), min_size=1, max_size=4),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any), min_size=1, max_size=4),
)
def test_expand_power_series_multiplies_back_exactly(num, monos):
    r = fr(num, monos)
    s = expand(r, TruncationWindow((0, 0), (8, 8)))
    assert s.support_bounded
    back = multiply_back(s, r)
    assert back.window.hi == (8, 8)
    assert back.terms == r.numerator.terms or all(
        not back.window.contains(x) for x in r.numerator.terms
    )


@pytest.mark.parametrize("backend", ["compiled", "python"])
def test_expand_backends_agree(backend):
    from poincare_series import kernels

    if backend == "compiled" and not kernels.has_compiled():
        pytest.skip("compiled kernel not built")
    r = fr({(0, 0): 1, (-1, 2): 1, (0, 1): -2}, [(1, 0), (-1, 1), (2, -1), (0, 1)])
    w = TruncationWindow((-10, -10), (10, 10))
    ref = expand(r, w, ExpansionRegion((1, 0)), backend="python")
    assert expand(r, w, ExpansionRegion((1, 0)), backend=backend) == ref


def test_expand_overflow_falls_back_to_python_ints():
    # coefficients of 1/(1-z)^k grow like binomials; (80 choose 40) > 2**63
    r = FactoredRational(P({(0,): 1}), (GeometricFactor((1,), 41),))
    s = expand(r, TruncationWindow((0,), (40,)))
    from math import comb

    assert s.coefficient((40,)) == comb(80, 40)
    assert comb(80, 40) > 2**63
