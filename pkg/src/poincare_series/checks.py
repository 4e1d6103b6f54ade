"""Randomised and exhaustive consistency suites.

Each suite returns a list of failure descriptions; an empty list is a
pass.  The CLI ``selfcheck`` runs them at small sizes and the acceptance
tests at full size.
"""

from __future__ import annotations

import random
from typing import List, Sequence

from . import binary, ternary
from .multisection import multisect, phi_roots_of_unity_check, psi_via_shift
from .reconstruct import RationalForm, guess_rational_form
from .series import FactoredRational, GeometricFactor, TruncatedLaurentSeries, TruncationWindow, expand


def random_polynomial(rng: random.Random, max_degree: int, bound: int) -> TruncatedLaurentSeries:
    deg = rng.randint(0, max_degree)
    terms = {(i,): rng.randint(-bound, bound) for i in range(deg + 1)}
    if not any(terms.values()):
        terms[(0,)] = 1
    return TruncatedLaurentSeries.polynomial(terms, arity=1)


def psi_suite(
    rng: random.Random,
    trials: int = 100,
    max_degree: int = 30,
    bound: int = 50,
    max_m: int = 5,
    max_n: int = 10,
    order: int = 10,
) -> List[str]:
    """``psi_via_shift`` against the section of the expanded ``R / (1 - t**m z**k)``."""
    failures = []
    for trial in range(trials):
        R = random_polynomial(rng, max_degree, bound)
        m = rng.randint(1, max_m)
        # cycle through k < n, k == n and k > n so every branch is exercised
        kind = trial % 5
        if kind == 3:
            n = rng.randint(1, max_n)
            k = n
        elif kind == 4:
            n = rng.randint(1, max_n - 1)
            k = rng.randint(n + 1, max_n)
        else:
            n = rng.randint(1, max_n)
            k = rng.randint(0, n - 1)
        direct = _direct_psi(R, m, n, k, order)
        fast = psi_via_shift(R, m, n, k, order)
        if direct != fast:
            failures.append(f"m={m} n={n} k={k} R={R.terms}: {fast.coefficients} != {direct.coefficients}")
    return failures


def _direct_psi(R, m, n, k, order):
    num = TruncatedLaurentSeries.polynomial({(0,) + x: c for x, c in R.terms.items()}, arity=2)
    f = FactoredRational(num, (GeometricFactor((m, k)),))
    window = TruncationWindow((0, 0), (m * order, n * order))
    return multisect(expand(f, window), (m, n), order)


def phi_hat_suite(
    rng: random.Random,
    trials: int = 50,
    max_n1: int = 3,
    max_n: int = 6,
    order: int = 6,
    span: int = 3,
    n_terms: int = 8,
) -> List[str]:
    """Section of ``R / (1 - t**n1 p**k q**l)`` against ``Phi-hat_{n2-k, n3-l}(R)``.

    ``R`` is a Laurent polynomial in ``p, q`` with exponents in
    ``[-span, span]``, embedded with ``t``-degree zero.
    """
    failures = []
    for trial in range(trials):
        terms = {}
        for _ in range(n_terms):
            x = (rng.randint(-span, span), rng.randint(-span, span))
            terms[x] = terms.get(x, 0) + rng.randint(-20, 20)
        if not any(terms.values()):
            terms[(0, 0)] = 1
        R = TruncatedLaurentSeries.polynomial(terms, arity=2)
        n1 = rng.randint(1, max_n1)
        n2 = rng.randint(0, max_n)
        n3 = rng.randint(0, max_n)
        # every third trial hits the degenerate n2 == k, n3 == l case
        if trial % 3 == 0:
            k, l = n2, n3
        else:
            k, l = rng.randint(0, n2), rng.randint(0, n3)
        if (n1, k, l) == (0, 0, 0):
            continue
        num = TruncatedLaurentSeries.polynomial({(0,) + x: c for x, c in R.terms.items()}, arity=3)
        f = FactoredRational(num, (GeometricFactor((n1, k, l)),))
        window = TruncationWindow((0, -span, -span), (n1 * order, n2 * order, n3 * order))
        direct = multisect(expand(f, window), (n1, n2, n3), order)
        via = multisect(R, (n2 - k, n3 - l), order)
        if direct != via:
            failures.append(
                f"n=({n1},{n2},{n3}) k={k} l={l} R={R.terms}: {via.coefficients} != {direct.coefficients}"
            )
    return failures


def roots_of_unity_suite(
    rng: random.Random,
    trials: int = 50,
    max_degree: int = 40,
    bound: int = 100,
    ns: Sequence[int] = range(1, 9),
    tol: float = 1e-9,
) -> List[str]:
    """Roots-of-unity average against the exact section, in floating point."""
    failures = []
    for _ in range(trials):
        f = random_polynomial(rng, max_degree, bound)
        for n in ns:
            if not phi_roots_of_unity_check(f, n, tol):
                failures.append(f"n={n} f={f.terms}")
    return failures


def binary_agreement(ds: Sequence[int], order: int) -> List[str]:
    failures = []
    for d in ds:
        o = binary.poincare_binary_oracle(d, order)
        s = binary.poincare_binary_springer(d, order)
        if o != s:
            failures.append(f"d={d}: springer {s.coefficients} != oracle {o.coefficients}")
    return failures


def ternary_agreement(
    ds: Sequence[int],
    order: int,
    region_name: str = ternary.DEFAULT_REGION,
    form: str = "proof",
    sum_range: str = "full",
) -> List[str]:
    failures = []
    for d in ds:
        o = ternary.poincare_ternary_oracle(d, order)
        try:
            s = ternary.poincare_ternary_springer(d, order, region_name, form=form, sum_range=sum_range)
        except ternary.DegenerateResidueError as exc:
            failures.append(f"d={d}: {exc}")
            continue
        if o != s:
            failures.append(f"d={d}: closed {s.coefficients} != oracle {o.coefficients}")
    return failures


def binary_partial_fractions(ds: Sequence[int], t_order: int = 8, z_order: int = 40) -> List[str]:
    return [f"d={d}" for d in ds if not binary.partial_fraction_check(d, t_order, z_order)]


def ternary_partial_fractions(
    ds: Sequence[int], t_order: int = 4, pq_order: int = 30, region_name: str = ternary.DEFAULT_REGION
) -> List[str]:
    return [
        f"d={d}"
        for d in ds
        if not ternary.ternary_partial_fraction_check(d, t_order, pq_order, region_name)
    ]


def vanishing_range(ds: Sequence[int], order: int, region_name: str = ternary.DEFAULT_REGION) -> List[str]:
    """Residues outside ``0 <= k, j <= d // 3`` should add nothing."""
    failures = []
    for d in ds:
        for kj, part in ternary.dropped_terms(d, order, region_name).items():
            if not part.is_zero():
                failures.append(f"d={d} (k,j)={kj}: {part.coefficients}")
    return failures


def reconstruct_roundtrip(
    rng: random.Random, trials: int = 25, max_num_degree: int = 5, max_r: int = 3, max_e: int = 8, order: int = 40
) -> List[str]:
    failures = []
    for _ in range(trials):
        num = [rng.randint(-9, 9) for _ in range(rng.randint(0, max_num_degree) + 1)]
        if not any(num):
            num[0] = 1
        exps = [rng.randint(1, max_e) for _ in range(rng.randint(1, max_r))]
        form = RationalForm(tuple(num), tuple(exps))
        got = guess_rational_form(form.expand(order), exps)
        if got != form:
            failures.append(f"{form} recovered as {got}")
    return failures
