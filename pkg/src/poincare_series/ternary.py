"""Poincare series of the invariants of a ternary form of degree d.

Variables are ordered ``(t, p, q)`` for the generating function and
``(p, q)`` for residues.  The generating function is

    f_d(t, p, q) = b3(p, q) / prod_{k + l <= d} (1 - t p**k q**l),
    b3(p, q) = 1 + p q + q**2 / p - 2 q - q**2,

and ``dim (I_{3,d})_s`` is the coefficient of ``t**s p**(d s) q**(d s)`` in
``f_d(t, p**3, q**3)``.

The closed form decomposes ``f_d`` into ``sum R_kj(p, q) / (1 - t p**k q**j)``
and sections each residue along ``(d - 3k, d - 3j)``.  Residues have factors
with negative exponents, so each is expanded as a Laurent series in a fixed
:class:`~poincare_series.series.ExpansionRegion`.  The sum over every
``k + j <= d`` reproduces the oracle in any consistent region.  Restricting
the sum to ``0 <= k, j <= d // 3`` drops terms that do not vanish;
:func:`poincare_ternary_springer` keeps that restriction available as
``sum_range="restricted"`` so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .multisection import TargetSeries, multisect, ray_coefficients, sum_series
from .series import (
    ExpansionRegion,
    FactoredRational,
    GeometricFactor,
    TruncatedLaurentSeries,
    TruncationWindow,
    expand,
    expansion_box,
    pochhammer_monomials,
)

PoincareCoefficients = TargetSeries

#: b3(p, q) as exponent pairs (p, q) -> coefficient
B3_TERMS: Dict[Tuple[int, int], int] = {
    (0, 0): 1,
    (1, 1): 1,
    (-1, 2): 1,
    (0, 1): -2,
    (0, 2): -1,
}

# variable orders, outermost-smallest first, for (p, q) and (t, p, q)
REGIONS = {
    "q-outer": ((1, 0), (0, 2, 1)),
    "p-outer": ((0, 1), (0, 1, 2)),
}
DEFAULT_REGION = "q-outer"
FORMS = ("proof", "limit", "transposed")
SUM_RANGES = ("restricted", "full")


class DegenerateResidueError(ValueError):
    """A residue denominator contains the factor ``1 - 1``."""


def region(name: str, with_t: bool = False) -> ExpansionRegion:
    try:
        pq, tpq = REGIONS[name]
    except KeyError:
        raise ValueError(f"unknown region {name!r}; choose from {sorted(REGIONS)}") from None
    return ExpansionRegion(tpq if with_t else pq)


def _check(d, order=0):
    if int(d) != d or d < 1:
        raise ValueError(f"form degree must be a positive integer, got {d!r}")
    if int(order) != order or order < 0:
        raise ValueError(f"order must be a non-negative integer, got {order!r}")


def b3(with_t: bool = False, scale: int = 1) -> TruncatedLaurentSeries:
    """``b3(p**scale, q**scale)``, optionally with a leading ``t`` slot."""
    pre = (0,) if with_t else ()
    return TruncatedLaurentSeries.polynomial(
        {pre + (scale * a, scale * b): c for (a, b), c in B3_TERMS.items()}
    )


def ternary_denominator_monomials(d: int, construction: str = "pairs") -> List[Tuple[int, int, int]]:
    """Monomials ``t p**k q**l`` of the denominator of ``f_d``.

    ``"pairs"`` enumerates ``k + l <= d`` directly; ``"pochhammer"`` builds
    ``prod_{s=0}^{d} (t q**s, p)_{d+1-s}``.
    """
    _check(d)
    if construction == "pairs":
        return [(1, k, l) for k in range(d + 1) for l in range(d + 1 - k)]
    if construction == "pochhammer":
        out = []
        for s in range(d + 1):
            out += pochhammer_monomials((1, 0, s), (0, 1, 0), d + 1 - s)
        return out
    raise ValueError(f"unknown construction {construction!r}")


def ternary_generating_function(d: int, construction: str = "pairs") -> FactoredRational:
    return FactoredRational.from_monomials(
        b3(with_t=True), ternary_denominator_monomials(d, construction)
    )


def poincare_ternary_oracle(d: int, order: int) -> PoincareCoefficients:
    """Coefficients of ``t**s (p q)**(d s)`` in ``f_d(t, p**3, q**3)``.

    Every ``t``-coefficient is a Laurent polynomial, so the expansion is
    region free; the window only has to reach ``(order, d*order, d*order)``.
    """
    _check(d, order)
    f = ternary_generating_function(d).scale_exponents((1, 3, 3))
    window = TruncationWindow((0, -3, -3), (order, d * order, d * order))
    return multisect(expand(f, window), (1, d, d), order)


def restricted_indices(d: int) -> List[Tuple[int, int]]:
    """``(k, j)`` with ``0 <= k, j <= d // 3``."""
    return [(k, j) for k in range(d // 3 + 1) for j in range(d // 3 + 1) if k + j <= d]


def full_indices(d: int) -> List[Tuple[int, int]]:
    """Every ``(k, j)`` with ``k + j <= d``: one residue per denominator factor."""
    return [(k, j) for k in range(d + 1) for j in range(d + 1 - k)]


def ternary_residue_rational(d: int, k: int, j: int, form: str = "proof", cube: bool = True) -> FactoredRational:
    """``R_kj`` as a factored rational in ``(p, q)``.

    ``"proof"``: ``(-1)**k p**(k(k+1)/2) b3 / (prod_{s != j} (p**-k q**(s-j), p)_{d+1-s}
    (p, p)_k (p, p)_{d-k-j})``.

    ``"limit"``: ``b3 / prod_{(a, b) != (k, j)} (1 - p**(a-k) q**(b-j))``, the
    unsimplified ``t -> p**-k q**-j`` limit.  Equal to ``"proof"`` as rationals.

    ``"transposed"``: the denominator ``prod_{s != j} (q**-3k, p**(3(s-j)))_{d+1-s}``
    with the roles of base and ratio swapped, already in cubed variables.
    Its first factor is ``1 - 1`` whenever ``k = 0``.
    """
    _check(d)
    if not (0 <= k and 0 <= j and k + j <= d):
        raise ValueError(f"residue index ({k}, {j}) outside k + j <= {d}")
    if form not in FORMS:
        raise ValueError(f"unknown residue form {form!r}")
    sign = -1 if k % 2 else 1
    if form == "transposed":
        shift = 3 * k * (k + 1) // 2
        num = b3(scale=3) * TruncatedLaurentSeries.monomial((shift, 0), sign)
        monos = []
        for s in range(d + 1):
            if s == j:
                continue
            monos += [(3 * i * (s - j), -3 * k) for i in range(d + 1 - s)]
        monos += pochhammer_monomials((3, 0), (3, 0), k)
        monos += pochhammer_monomials((3, 0), (3, 0), d - k - j)
        if any(m == (0, 0) for m in monos):
            raise DegenerateResidueError(
                f"transposed residue ({k}, {j}) for d={d} has the factor 1 - 1"
            )
        r = FactoredRational.from_monomials(num, monos)
        return r if cube else _uncube(r)
    if form == "limit":
        monos = [(a - k, b - j) for a, b in _pairs(d) if (a, b) != (k, j)]
        r = FactoredRational.from_monomials(b3(), monos)
    else:
        shift = k * (k + 1) // 2
        num = b3() * TruncatedLaurentSeries.monomial((shift, 0), sign)
        monos = []
        for s in range(d + 1):
            if s != j:
                monos += pochhammer_monomials((-k, s - j), (1, 0), d + 1 - s)
        monos += pochhammer_monomials((1, 0), (1, 0), k)
        monos += pochhammer_monomials((1, 0), (1, 0), d - k - j)
        r = FactoredRational.from_monomials(num, monos)
    return r.scale_exponents((3, 3)) if cube else r


def _pairs(d):
    return [(a, b) for a in range(d + 1) for b in range(d + 1 - a)]


def _uncube(r: FactoredRational) -> FactoredRational:
    def down(x):
        if any(v % 3 for v in x):
            raise ValueError("exponent is not a multiple of 3")
        return tuple(v // 3 for v in x)

    num = TruncatedLaurentSeries.polynomial({down(x): c for x, c in r.numerator.terms.items()})
    return FactoredRational(num, tuple(GeometricFactor(down(f.mu), f.multiplicity) for f in r.factors))


@dataclass(frozen=True)
class TernaryResidue:
    d: int
    k: int
    j: int
    rational: FactoredRational
    expansion: TruncatedLaurentSeries


def ternary_residue(
    d: int,
    k: int,
    j: int,
    region_name: str,
    window: TruncationWindow,
    form: str = "proof",
) -> TernaryResidue:
    """Expansion of ``R_kj(p**3, q**3)`` on ``window`` in the named region."""
    r = ternary_residue_rational(d, k, j, form=form)
    return TernaryResidue(d, k, j, r, expand(r, window, region(region_name)))


def section_index(d: int, k: int, j: int) -> Tuple[int, int]:
    return (d - 3 * k, d - 3 * j)


def ternary_summand(
    d: int, k: int, j: int, order: int, region_name: str = DEFAULT_REGION, form: str = "proof"
) -> TargetSeries:
    """Contribution of residue ``(k, j)``: its coefficients at ``s * (d-3k, d-3j)``.

    A negative index entry reads coefficients at negative exponents, which
    is what the ``1/(1 - t p**3k q**3j)`` factor actually selects.
    """
    idx = section_index(d, k, j)
    lo = tuple(min(0, n * order) for n in idx)
    hi = tuple(max(0, n * order) for n in idx)
    res = ternary_residue(d, k, j, region_name, TruncationWindow(lo, hi), form=form)
    return ray_coefficients(res.expansion, idx, order)


def poincare_ternary_springer(
    d: int,
    order: int,
    region_name: str = DEFAULT_REGION,
    form: str = "proof",
    sum_range: str = "restricted",
) -> PoincareCoefficients:
    """Closed form: sum of residue sections.

    ``sum_range="restricted"`` sums ``0 <= k, j <= d // 3`` with the sections
    ``Phi-hat_{d-3k, d-3j}``.  ``sum_range="full"``
    sums every residue of the partial fraction decomposition; this is the
    variant that equals :func:`poincare_ternary_oracle`.
    """
    _check(d, order)
    if sum_range == "restricted":
        pairs = restricted_indices(d)
    elif sum_range == "full":
        pairs = full_indices(d)
    else:
        raise ValueError(f"unknown sum range {sum_range!r}")
    return sum_series(
        (ternary_summand(d, k, j, order, region_name, form) for k, j in pairs), order
    )


def poincare_ternary_closed(d: int, order: int, region_name: str = DEFAULT_REGION) -> PoincareCoefficients:
    """Full-range closed form, the one that agrees with the oracle."""
    return poincare_ternary_springer(d, order, region_name, sum_range="full")


def dropped_terms(d: int, order: int, region_name: str = DEFAULT_REGION) -> Dict[Tuple[int, int], TargetSeries]:
    """Sections of the residues outside ``0 <= k, j <= d // 3``, by ``(k, j)``."""
    keep = set(restricted_indices(d))
    return {
        (k, j): ternary_summand(d, k, j, order, region_name)
        for k, j in full_indices(d)
        if (k, j) not in keep
    }


def _lift_t(r: FactoredRational) -> FactoredRational:
    num = TruncatedLaurentSeries.polynomial(
        {(0,) + x: c for x, c in r.numerator.terms.items()}, arity=3
    )
    return FactoredRational(num, tuple(GeometricFactor((0,) + f.mu, f.multiplicity) for f in r.factors))


def partial_fraction_terms(d: int, form: str = "proof") -> List[FactoredRational]:
    """``R_kj(p, q) / (1 - t p**k q**j)`` for all ``k + j <= d`` in ``(t, p, q)``."""
    return [
        _lift_t(ternary_residue_rational(d, k, j, form=form, cube=False)).with_factors([(1, k, j)])
        for k, j in full_indices(d)
    ]


def ternary_partial_fraction_check(
    d: int, t_order: int, pq_order: int, region_name: str = DEFAULT_REGION
) -> bool:
    """Exact check of ``f_d = sum_{k+j<=d} R_kj / (1 - t p**k q**j)``.

    Both sides are expanded with ``t`` outermost, then the region's order of
    ``p`` and ``q``.  The window reaches down to the lowest exponent any
    residue expansion can produce below ``(t_order, pq_order, pq_order)``.
    """
    _check(d)
    reg = region(region_name, with_t=True)
    f = ternary_generating_function(d)
    terms = partial_fraction_terms(d)
    top = (t_order, pq_order, pq_order)
    probe = TruncationWindow(top, top)
    lo = [0, 0, 0]
    for r in terms + [f]:
        _, _, box = expansion_box(r, probe, reg)
        if box is not None:
            lo = [min(a, b) for a, b in zip(lo, box[0])]
    window = TruncationWindow(tuple(lo), top)
    lhs = expand(f, window, reg)
    rhs = TruncatedLaurentSeries({}, window, False)
    for r in terms:
        rhs = rhs + expand(r, window, reg)
    return lhs.terms == rhs.terms


def compare_variants(
    d: int, order: int, regions=tuple(REGIONS), forms=("proof", "transposed"), ranges=SUM_RANGES
) -> List[dict]:
    """Agreement of each closed-form variant with the oracle.

    Returns one record per (form, region, sum range) with ``agrees`` set to
    True/False, or None and an ``error`` message when the variant cannot be
    evaluated.
    """
    oracle = poincare_ternary_oracle(d, order)
    out = []
    for form in forms:
        for reg in regions:
            for rng in ranges:
                rec = {"d": d, "order": order, "form": form, "region": reg, "sum_range": rng}
                try:
                    got = poincare_ternary_springer(d, order, reg, form=form, sum_range=rng)
                except DegenerateResidueError as exc:
                    rec.update(agrees=None, error=str(exc), coefficients=None)
                else:
                    rec.update(agrees=got == oracle, error=None, coefficients=list(got))
                out.append(rec)
    return out
