"""Poincare series of the invariants of a binary form of degree d.

Two independent routes give ``dim (I_{2,d})_s`` for ``s = 0..N``:

* the oracle expands ``f_d(t, z**2)`` with ``f_d(t, z) = (1 - z) / (t, z)_{d+1}``
  and reads the coefficients of ``(t z**d)**s``;
* Springer's closed form sums univariate sections of the partial fraction
  residues ``R_k(z**2)`` of ``f_d`` with respect to ``t``.

Variables are ordered ``(t, z)`` for bivariate series and ``(z,)`` for
residues.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multisection import TargetSeries, multisect, phi, sum_series
from .series import (
    ExpansionRegion,
    FactoredRational,
    TruncatedLaurentSeries,
    TruncationWindow,
    expand,
    expansion_box,
    pochhammer_monomials,
)

PoincareCoefficients = TargetSeries


def _check_degree(d, order=0):
    if int(d) != d or d < 1:
        raise ValueError(f"form degree must be a positive integer, got {d!r}")
    if int(order) != order or order < 0:
        raise ValueError(f"order must be a non-negative integer, got {order!r}")


def binary_generating_function(d: int) -> FactoredRational:
    """``(1 - z) / ((1 - t)(1 - t z)...(1 - t z**d))`` in variables ``(t, z)``."""
    _check_degree(d)
    numerator = TruncatedLaurentSeries.polynomial({(0, 0): 1, (0, 1): -1})
    return FactoredRational.from_monomials(numerator, pochhammer_monomials((1, 0), (0, 1), d + 1))


def poincare_binary_oracle(d: int, order: int) -> PoincareCoefficients:
    """Coefficients of ``(t z**d)**s`` in ``f_d(t, z**2)``, by direct expansion."""
    _check_degree(d, order)
    f = binary_generating_function(d).scale_exponents((1, 2))
    window = TruncationWindow((0, 0), (order, d * order))
    return multisect(expand(f, window), (1, d), order)


@dataclass(frozen=True)
class BinaryResidue:
    d: int
    k: int
    rational: FactoredRational
    series: TruncatedLaurentSeries


def springer_residue_rational(d: int, k: int, square: bool = True) -> FactoredRational:
    """``R_k`` as a factored rational in ``z`` (or in ``z**2`` when ``square``).

    ``R_k(z) = (-1)**k z**(k(k+1)/2) (1 - z) / ((z, z)_k (z, z)_{d-k})``.
    """
    _check_degree(d)
    if not 0 <= k <= d:
        raise ValueError(f"residue index {k} outside 0..{d}")
    e = 2 if square else 1
    sign = -1 if k % 2 else 1
    shift = e * k * (k + 1) // 2
    numerator = TruncatedLaurentSeries.polynomial({(shift,): sign, (shift + e,): -sign})
    monos = pochhammer_monomials((e,), (e,), k) + pochhammer_monomials((e,), (e,), d - k)
    return FactoredRational.from_monomials(numerator, monos)


def springer_residue(d: int, k: int, window: TruncationWindow) -> BinaryResidue:
    """The residue ``R_k(z**2)`` of Springer's formula expanded on ``window``."""
    _check_degree(d)
    if not 0 <= 2 * k < d:
        raise ValueError(f"need 0 <= k < d/2, got k={k}, d={d}")
    r = springer_residue_rational(d, k)
    return BinaryResidue(d, k, r, expand(r, window))


def springer_summand(d: int, k: int, order: int) -> TargetSeries:
    """``phi_{d-2k}`` of the k-th residue, up to ``T**order``.

    Also accepts ``k = d/2`` for even ``d``: the section index is then zero
    and the term reduces to the residue's constant term, which is 0.
    """
    n = d - 2 * k
    if n < 0:
        raise ValueError("section index d - 2k is negative")
    r = springer_residue_rational(d, k)
    window = TruncationWindow((0,), (n * order + k * (k + 1),))
    series = expand(r, window)
    if n == 0:
        return multisect(series, (0,), order)
    return phi(series, n, order)


def poincare_binary_springer(d: int, order: int) -> PoincareCoefficients:
    """Springer's formula: ``sum_{0 <= k < d/2} phi_{d-2k}(R_k(z**2))``."""
    _check_degree(d, order)
    # k = d/2 is left out; its residue starts at z**(k(k+1)) so it adds 0
    return sum_series((springer_summand(d, k, order) for k in range((d + 1) // 2)), order)


def partial_fraction_check(d: int, t_order: int, z_order: int) -> bool:
    """Exact check of ``f_d(t, z) = sum_{k=0}^{d} R_k(z) / (1 - t z**k)``.

    Each residue is taken in its unsimplified limit form
    ``(1 - z) / prod_{i != k} (1 - z**(i-k))`` so that the expansion
    machinery, not a hand rewrite, decides the negative-power factors.
    Both sides are expanded with ``t`` outermost and ``z`` small.
    """
    _check_degree(d)
    region = ExpansionRegion((0, 1))
    f = binary_generating_function(d)
    terms = [binary_limit_residue(d, k).with_factors([(1, k)]) for k in range(d + 1)]
    probe = TruncationWindow((t_order, z_order), (t_order, z_order))
    z_lo = 0
    for r in terms + [f]:
        _, _, box = expansion_box(r, probe, region)
        if box is not None:
            z_lo = min(z_lo, box[0][1])
    window = TruncationWindow((0, z_lo), (t_order, z_order))
    lhs = expand(f, window, region)
    rhs = TruncatedLaurentSeries({}, window, False)
    for term in terms:
        rhs = rhs + expand(term, window, region)
    return lhs.terms == rhs.terms


def binary_limit_residue(d: int, k: int) -> FactoredRational:
    """``lim_{t -> z**-k} f_d(t, z) (1 - t z**k)`` as a rational in ``(t, z)``.

    The ``t`` slot is unused (exponent 0); keeping arity 2 lets the caller
    attach the ``1 - t z**k`` factor directly.
    """
    numerator = TruncatedLaurentSeries.polynomial({(0, 0): 1, (0, 1): -1})
    return FactoredRational.from_monomials(
        numerator, [(0, i - k) for i in range(d + 1) if i != k]
    )

