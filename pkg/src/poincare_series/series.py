"""Exact truncated multivariate Laurent series over Python integers.

A series is a finite map from exponent tuples to nonzero ints together
with a :class:`TruncationWindow`, the box on which every coefficient is
known exactly.  Upper bounds may be ``None`` (complete in that direction),
which is how Laurent polynomials are represented.

Two kinds of series occur:

* *support-bounded* series vanish at every exponent that is not
  componentwise ``>= window.lo``.  Polynomials and expansions whose
  geometric factors all point into the positive orthant are of this kind,
  and they multiply like truncated power series.
* expansions in a mixed region (some factor has a negative exponent after
  orientation) are exact on their window only.  They may be added to each
  other on a common window and multiplied by polynomials, nothing else.

Rational functions are never normalised.  A :class:`FactoredRational`
keeps its denominator as a multiset of ``1 - monomial`` factors and is
turned into a series by :func:`expand` for a chosen
:class:`ExpansionRegion`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import kernels

Exponent = Tuple[int, ...]

#: refuse dense boxes larger than this many cells
MAX_BOX_CELLS = 60_000_000


def _vec(x) -> Exponent:
    return tuple(int(v) for v in x)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


@dataclass(frozen=True)
class TruncationWindow:
    """Box ``lo <= x <= hi``; an upper entry of ``None`` means unbounded."""

    lo: Exponent
    hi: Tuple[Optional[int], ...]

    def __post_init__(self):
        lo = _vec(self.lo)
        hi = tuple(None if h is None else int(h) for h in self.hi)
        if len(lo) != len(hi):
            raise ValueError("window bounds have different arity")
        for l, h in zip(lo, hi):
            if h is not None and h < l:
                raise ValueError(f"empty window: lower {lo} exceeds upper {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def arity(self) -> int:
        return len(self.lo)

    @classmethod
    def box(cls, lo: Sequence[int], hi: Sequence[Optional[int]]) -> "TruncationWindow":
        return cls(tuple(lo), tuple(hi))

    def contains(self, x: Exponent) -> bool:
        return all(l <= v and (h is None or v <= h) for v, l, h in zip(x, self.lo, self.hi))

    @property
    def bounded(self) -> bool:
        return all(h is not None for h in self.hi)

    def intersect(self, other: "TruncationWindow") -> "TruncationWindow":
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(_min_upper(a, b) for a, b in zip(self.hi, other.hi))
        return TruncationWindow(lo, hi)


def _min_upper(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_upper(a, b):
    return None if a is None or b is None else a + b


class TruncatedLaurentSeries:
    """Immutable exact series; see the module docstring for window semantics."""

    __slots__ = ("_terms", "_window", "_support_bounded")

    def __init__(
        self,
        terms: Mapping[Exponent, int],
        window: TruncationWindow,
        support_bounded: bool = True,
    ):
        clean = {}
        for x, c in terms.items():
            x = _vec(x)
            if len(x) != window.arity:
                raise ValueError(f"exponent {x} does not match arity {window.arity}")
            c = int(c)
            if c == 0:
                continue
            if not window.contains(x):
                raise ValueError(f"exponent {x} lies outside the window")
            clean[x] = c
        self._terms = clean
        self._window = window
        self._support_bounded = bool(support_bounded)

    # construction ---------------------------------------------------------

    @classmethod
    def polynomial(cls, terms: Mapping[Sequence[int], int], arity: Optional[int] = None):
        """Laurent polynomial, complete at every exponent."""
        terms = {_vec(x): int(c) for x, c in terms.items() if c != 0}
        if arity is None:
            if not terms:
                raise ValueError("arity is required for the zero polynomial")
            arity = len(next(iter(terms)))
        if terms:
            lo = tuple(min(x[i] for x in terms) for i in range(arity))
        else:
            lo = (0,) * arity
        return cls(terms, TruncationWindow(lo, (None,) * arity))

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1):
        exponent = _vec(exponent)
        return cls.polynomial({exponent: coeff}, arity=len(exponent))

    @classmethod
    def one(cls, arity: int):
        return cls.monomial((0,) * arity)

    # accessors ------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def window(self) -> TruncationWindow:
        return self._window

    @property
    def arity(self) -> int:
        return self._window.arity

    @property
    def support_bounded(self) -> bool:
        return self._support_bounded

    @property
    def is_polynomial(self) -> bool:
        return self._support_bounded and all(h is None for h in self._window.hi)

    def coefficient(self, x: Sequence[int]) -> int:
        x = _vec(x)
        if not self._window.contains(x):
            if self._support_bounded and any(v < l for v, l in zip(x, self._window.lo)):
                return 0
            raise KeyError(f"coefficient at {x} is outside the truncation window")
        return self._terms.get(x, 0)

    __getitem__ = coefficient

    def support_box(self):
        """Componentwise (min, max) over stored exponents, or None if zero."""
        if not self._terms:
            return None
        xs = list(self._terms)
        r = self.arity
        return (
            tuple(min(x[i] for x in xs) for i in range(r)),
            tuple(max(x[i] for x in xs) for i in range(r)),
        )

    def restrict(self, window: TruncationWindow) -> "TruncatedLaurentSeries":
        """Forget everything outside ``window`` (which must lie inside ours)."""
        if window.arity != self.arity:
            raise ValueError("arity mismatch")
        w = self._window.intersect(window)
        bounded = self._support_bounded and all(
            a <= b for a, b in zip(w.lo, self._window.lo)
        )
        if bounded:
            w = TruncationWindow(self._window.lo, w.hi)
        return TruncatedLaurentSeries(
            {x: c for x, c in self._terms.items() if w.contains(x)}, w, bounded
        )

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        return series_add(self, other)

    def __neg__(self):
        return TruncatedLaurentSeries(
            {x: -c for x, c in self._terms.items()}, self._window, self._support_bounded
        )

    def __sub__(self, other):
        return series_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedLaurentSeries(
                {x: c * other for x, c in self._terms.items()},
                self._window,
                self._support_bounded,
            )
        return series_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return (
            self._window == other._window
            and self._support_bounded == other._support_bounded
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self._window, frozenset(self._terms.items())))

    def __repr__(self):
        body = " + ".join(f"{c}*{x}" for x, c in sorted(self._terms.items())) or "0"
        return f"TruncatedLaurentSeries({body}; window={self._window.lo}..{self._window.hi})"


def series_add(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Coefficientwise sum, exact on the common part of both windows."""
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")
    wa, wb = a.window, b.window
    hi = tuple(_min_upper(x, y) for x, y in zip(wa.hi, wb.hi))
    bounded = a.support_bounded and b.support_bounded
    if bounded:
        lo = tuple(min(x, y) for x, y in zip(wa.lo, wb.lo))
    else:
        lo = tuple(max(x, y) for x, y in zip(wa.lo, wb.lo))
    w = TruncationWindow(lo, hi)
    out = Counter()
    for src in (a, b):
        for x, c in src._terms.items():
            if w.contains(x):
                out[x] += c
    return TruncatedLaurentSeries(out, w, bounded)


def series_mul(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Cauchy product, truncated to where it is provably exact.

    Two support-bounded operands multiply like truncated power series:
    the result starts at ``lo_a + lo_b`` and is exact up to
    ``min(hi_a + lo_b, hi_b + lo_a)``.  A window-only expansion can only be
    multiplied by a polynomial, which shrinks its window by the
    polynomial's exponent extents.
    """
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} vs {b.arity}")
    if a.support_bounded and b.support_bounded:
        wa, wb = a.window, b.window
        lo = _vadd(wa.lo, wb.lo)
        hi = tuple(
            _min_upper(_add_upper(ha, lb), _add_upper(hb, la))
            for ha, la, hb, lb in zip(wa.hi, wa.lo, wb.hi, wb.lo)
        )
        w = TruncationWindow(lo, hi)
        bounded = True
    else:
        if b.is_polynomial:
            series, poly = a, b
        elif a.is_polynomial:
            series, poly = b, a
        else:
            raise ValueError(
                "product of two window-only expansions is not determined by their windows"
            )
        box = poly.support_box()
        if box is None:
            return TruncatedLaurentSeries({}, series.window, False)
        emin, emax = box
        ws = series.window
        lo = _vadd(ws.lo, emax)
        hi = tuple(_add_upper(h, e) for h, e in zip(ws.hi, emin))
        if any(h is not None and h < l for l, h in zip(lo, hi)):
            raise ValueError("polynomial is too wide for the series window")
        w = TruncationWindow(lo, hi)
        bounded = False
    out = Counter()
    bt = list(b._terms.items())
    for xa, ca in a._terms.items():
        for xb, cb in bt:
            x = _vadd(xa, xb)
            if w.contains(x):
                out[x] += ca * cb
    return TruncatedLaurentSeries(out, w, bounded)


def q_pochhammer(a: Sequence[int], q: Sequence[int], n: int) -> TruncatedLaurentSeries:
    """Expanded ``(1 - a)(1 - a q)...(1 - a q**(n-1))`` for monomials ``a``, ``q``."""
    a = _vec(a)
    q = _vec(q)
    if len(a) != len(q):
        raise ValueError("arity mismatch")
    if n < 0:
        raise ValueError("n must be non-negative")
    result = TruncatedLaurentSeries.one(len(a))
    for mu in pochhammer_monomials(a, q, n):
        result = result * TruncatedLaurentSeries.polynomial({(0,) * len(a): 1, mu: -1})
    return result


def pochhammer_monomials(a: Sequence[int], q: Sequence[int], n: int):
    """The monomials ``a q**i`` (0 <= i < n) of a q-shifted factorial."""
    a = _vec(a)
    q = _vec(q)
    out = []
    for i in range(n):
        mu = tuple(x + i * y for x, y in zip(a, q))
        if not any(mu):
            raise ValueError(f"factor {i} of ({a}, {q})_{n} is 1 - 1 = 0")
        out.append(mu)
    return out


@dataclass(frozen=True)
class GeometricFactor:
    """The denominator factor ``(1 - x**mu) ** multiplicity``."""

    mu: Exponent
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "mu", _vec(self.mu))
        if not any(self.mu):
            raise ValueError("geometric factor 1 - 1 is zero")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")


@dataclass(frozen=True)
class FactoredRational:
    """``numerator / prod (1 - x**mu)**mult`` with the expansion deferred."""

    numerator: TruncatedLaurentSeries
    factors: Tuple[GeometricFactor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.numerator.is_polynomial:
            raise ValueError("numerator must be a Laurent polynomial")
        merged = Counter()
        for f in self.factors:
            if len(f.mu) != self.numerator.arity:
                raise ValueError("factor arity does not match numerator")
            merged[f.mu] += f.multiplicity
        object.__setattr__(
            self,
            "factors",
            tuple(GeometricFactor(mu, m) for mu, m in sorted(merged.items())),
        )

    @classmethod
    def from_monomials(cls, numerator, monomials: Iterable[Sequence[int]]):
        return cls(numerator, tuple(GeometricFactor(mu) for mu in monomials))

    @property
    def arity(self) -> int:
        return self.numerator.arity

    def factor_multiset(self) -> Counter:
        return Counter({f.mu: f.multiplicity for f in self.factors})

    def denominator_degree(self) -> int:
        return sum(f.multiplicity for f in self.factors)

    def scale_exponents(self, scales: Sequence[int]) -> "FactoredRational":
        """Substitute ``x_i -> x_i**scales[i]`` in numerator and factors."""
        scales = _vec(scales)

        def sc(x):
            return tuple(v * s for v, s in zip(x, scales))

        num = TruncatedLaurentSeries.polynomial(
            {sc(x): c for x, c in self.numerator.terms.items()}, arity=self.arity
        )
        return FactoredRational(
            num, tuple(GeometricFactor(sc(f.mu), f.multiplicity) for f in self.factors)
        )

    def times_monomial(self, exponent: Sequence[int], coeff: int = 1) -> "FactoredRational":
        num = self.numerator * TruncatedLaurentSeries.monomial(exponent, coeff)
        return FactoredRational(num, self.factors)

    def with_factors(self, monomials: Iterable[Sequence[int]]) -> "FactoredRational":
        extra = tuple(GeometricFactor(mu) for mu in monomials)
        return FactoredRational(self.numerator, self.factors + extra)

    def denominator_polynomial(self) -> TruncatedLaurentSeries:
        out = TruncatedLaurentSeries.one(self.arity)
        zero = (0,) * self.arity
        for f in self.factors:
            binom = TruncatedLaurentSeries.polynomial({zero: 1, f.mu: -1})
            for _ in range(f.multiplicity):
                out = out * binom
        return out


@dataclass(frozen=True)
class ExpansionRegion:
    """Lexicographic choice of which monomials count as small.

    ``order`` lists variable indices, outermost (infinitesimally smallest)
    first.  A monomial is small when its first nonzero exponent in that
    order is positive.
    """

    order: Tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(i) for i in self.order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"region order {order} is not a permutation")
        object.__setattr__(self, "order", order)

    @classmethod
    def standard(cls, arity: int) -> "ExpansionRegion":
        return cls(tuple(range(arity)))

    @property
    def arity(self) -> int:
        return len(self.order)

    def leading_index(self, mu: Sequence[int]) -> int:
        for level, var in enumerate(self.order):
            if mu[var] != 0:
                return level
        raise ValueError("the zero monomial has no direction")

    def is_small(self, mu: Sequence[int]) -> bool:
        return mu[self.order[self.leading_index(mu)]] > 0


def _orient(r: FactoredRational, region: ExpansionRegion):
    """Rewrite large factors via ``1/(1-mu) = -mu**-1 / (1 - mu**-1)``."""
    numerator = r.numerator
    steps = []
    for f in r.factors:
        if region.is_small(f.mu):
            steps.append((f.mu, f.multiplicity))
        else:
            inv = _vneg(f.mu)
            sign = -1 if f.multiplicity % 2 else 1
            shift = tuple(v * f.multiplicity for v in inv)
            numerator = numerator * TruncatedLaurentSeries.monomial(shift, sign)
            steps.append((inv, f.multiplicity))
    return numerator, steps


def expansion_box(r: FactoredRational, window: TruncationWindow, region: ExpansionRegion):
    """Working box for :func:`expand` plus the oriented numerator and steps.

    Every exponent that lies on a path from a numerator monomial to an
    exponent inside ``window`` (adding geometric steps one factor at a time,
    in any order) is inside the returned box, so a dense recurrence over the
    box is exact on the window.
    """
    if window.arity != r.arity or region.arity != r.arity:
        raise ValueError("arity mismatch between rational, window and region")
    numerator, steps = _orient(r, region)
    arity = r.arity
    box = numerator.support_box()
    if box is None:
        return numerator, steps, None
    mmin, mmax = box
    by_level = {}
    for mu, mult in steps:
        by_level.setdefault(region.leading_index(mu), []).append((mu, mult))
    low = [0] * arity
    up = [0] * arity
    for level, var in enumerate(region.order):
        group = by_level.get(level)
        if not group:
            continue
        if window.hi[var] is None:
            raise ValueError(
                f"window is unbounded in variable {var}, the growth direction of {group[0][0]}"
            )
        # the sum of u_i * mu_i[var] over this level is at most `budget`
        budget = max(0, window.hi[var] - mmin[var] - low[var])
        for c in range(arity):
            ratios = [Fraction(mu[c], mu[var]) for mu, _ in group]
            low[c] += math.floor(budget * min(0, min(ratios)))
            up[c] += math.ceil(budget * max(0, max(ratios)))
    lo = []
    hi = []
    for c in range(arity):
        lo.append(min(window.lo[c], mmin[c] + low[c]))
        top = mmax[c] + up[c]
        hi.append(top if window.hi[c] is None else max(window.hi[c], top))
    return numerator, steps, (tuple(lo), tuple(hi))


def expand(
    r: FactoredRational,
    window: TruncationWindow,
    region: Optional[ExpansionRegion] = None,
    backend: Optional[str] = None,
) -> TruncatedLaurentSeries:
    """Exact Laurent expansion of ``r`` on ``window`` under ``region``.

    Small factors expand as ``sum mu**u``; large ones are first rewritten as
    ``-mu**-1 / (1 - mu**-1)``.  The work is a dense in-place recurrence on
    the box from :func:`expansion_box`, done by the compiled kernel when
    available.  ``OverflowError`` from the int64 kernel triggers an exact
    recomputation on Python ints.
    """
    region = region or ExpansionRegion.standard(r.arity)
    numerator, steps, box = expansion_box(r, window, region)
    arity = r.arity
    oriented_nonneg = all(min(mu) >= 0 for mu, _ in steps)
    if box is None:
        return TruncatedLaurentSeries({}, window, oriented_nonneg)
    mmin, _ = numerator.support_box()
    bounded = oriented_nonneg and all(l <= m for l, m in zip(window.lo, mmin))
    lo, hi = box
    shape = tuple(h - l + 1 for l, h in zip(lo, hi))
    cells = math.prod(shape)
    if cells > MAX_BOX_CELLS:
        raise MemoryError(f"expansion box {shape} has {cells} cells")
    backend = backend or kernels.BACKEND
    dtype = kernels.working_dtype(backend)
    big = max((abs(c) for c in numerator.terms.values()), default=0) >= 2**62
    if dtype is np.int64 and big:
        dtype, backend = object, "python"
    try:
        arr = _dense_expand(numerator, steps, lo, shape, dtype, backend)
    except OverflowError:
        arr = _dense_expand(numerator, steps, lo, shape, object, "python")
    # read back the window part of the box
    sub = []
    for c in range(arity):
        a = max(window.lo[c], lo[c]) - lo[c]
        top = hi[c] if window.hi[c] is None else min(window.hi[c], hi[c])
        sub.append((a, top - lo[c] + 1))
    view = arr.reshape(shape)[tuple(slice(a, b) for a, b in sub)]
    offset = tuple(lo[c] + sub[c][0] for c in range(arity))
    terms = {}
    for idx in zip(*np.nonzero(view)):
        terms[tuple(int(i) + o for i, o in zip(idx, offset))] = int(view[idx])
    return TruncatedLaurentSeries(terms, window, bounded)


def _dense_expand(numerator, steps, lo, shape, dtype, backend):
    pad = (1,) * (3 - len(shape))
    arr = np.zeros(shape + pad, dtype=dtype)
    if dtype is object:
        arr[...] = 0
    for x, c in numerator.terms.items():
        idx = tuple(v - l for v, l in zip(x, lo)) + (0,) * len(pad)
        arr[idx] += c
    for mu, mult in steps:
        step = tuple(mu) + (0,) * len(pad)
        for _ in range(mult):
            kernels.geometric_inplace(arr, step, backend=backend)
    return arr


def multiply_back(expansion: TruncatedLaurentSeries, r: FactoredRational) -> TruncatedLaurentSeries:
    """``expansion * denominator(r)`` on the safely complete sub-window."""
    return series_mul(expansion, r.denominator_polynomial())
