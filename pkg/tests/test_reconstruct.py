import random

import pytest

from poincare_series.checks import reconstruct_roundtrip
from poincare_series.reconstruct import RationalForm, format_polynomial, guess_rational_form


def test_cubic_period():
    coeffs = RationalForm((1,), (3,)).expand(12)
    assert coeffs == (1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1)
    assert guess_rational_form(coeffs, [3]) == RationalForm((1,), (3,))


def test_two_generators():
    coeffs = RationalForm((1,), (4, 6)).expand(14)
    fit = guess_rational_form(coeffs, [6, 4])
    assert fit.numerator == (1,)
    assert str(fit) == "1/((1-T^4)(1-T^6))"


def test_wrong_period_fails():
    assert guess_rational_form(RationalForm((1,), (3,)).expand(12), [2]) is None


def test_numerator_recovered():
    form = RationalForm((1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1), (4, 8, 12))
    assert guess_rational_form(form.expand(60), [4, 8, 12]) == form


def test_order_too_small():
    with pytest.raises(ValueError):
        guess_rational_form([1, 0, 1], [2, 3])


def test_insufficient_margin():
    # the margin is max(e) + 2 = 4 trailing zeros; order 12 leaves 6, order 8 only 2
    form = RationalForm((1, 0, 0, 0, 0, 0, 1), (2,))
    assert guess_rational_form(form.expand(12), [2]) == form
    assert guess_rational_form(form.expand(8), [2]) is None


def test_format_plain_and_latex():
    assert format_polynomial((1, 0, -2, 3)) == "1 - 2T^2 + 3T^3"
    assert format_polynomial((0, -1)) == "-T"
    assert format_polynomial((0, 0)) == "0"
    assert format_polynomial((1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2), "latex") == "1 + 2T^{10}"
    assert RationalForm((1,), (2,)).format() == "1/(1-T^2)"
    assert RationalForm((1, 0, 1), (1, 3)).format("latex") == r"\frac{1 + T^{2}}{(1-T)(1-T^{3})}"
    assert RationalForm((1, 1), (2,)).format() == "(1 + T)/(1-T^2)"


def test_invalid_exponent():
    with pytest.raises(ValueError):
        RationalForm((1,), (0,))


@pytest.mark.parametrize("seed", range(5))
def test_roundtrip(seed):
    assert reconstruct_roundtrip(random.Random(seed), trials=25) == []
