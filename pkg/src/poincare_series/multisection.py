"""Multisection operators: pick the coefficients along one ray of exponents.

All of phi_n, Psi_{n1,n2}, Phi_{n1,n2,n3} and Phi-hat_{n1,n2} are the same
operation here: the coefficient of ``T**s`` is the input coefficient at
exponent ``s * idx``.  Matching is by ``m_i == n_i * s``, so a zero index
entry forces ``m_i == 0`` and the all-zero index returns the constant term
at every order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .series import TruncatedLaurentSeries


@dataclass(frozen=True)
class TargetSeries:
    """Coefficients of ``T**0 .. T**N`` as exact integers."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("a target series has at least the T**0 coefficient")

    @classmethod
    def zero(cls, order: int) -> "TargetSeries":
        return cls((0,) * (order + 1))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, s):
        return self.coefficients[s]

    def __add__(self, other: "TargetSeries") -> "TargetSeries":
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        return TargetSeries(tuple(a + b for a, b in zip(self, other)))

    def __mul__(self, k: int) -> "TargetSeries":
        return TargetSeries(tuple(k * a for a in self))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TargetSeries):
            return self.coefficients == other.coefficients
        if isinstance(other, (tuple, list)):
            return self.coefficients == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def sum_series(parts: Iterable[TargetSeries], order: int) -> TargetSeries:
    total = TargetSeries.zero(order)
    for part in parts:
        total = total + part
    return total


def ray_coefficients(f: TruncatedLaurentSeries, idx: Sequence[int], order: int) -> TargetSeries:
    """Coefficients of ``f`` at ``s * idx`` for ``s = 0..order``; any integer ``idx``."""
    idx = tuple(int(i) for i in idx)
    if len(idx) != f.arity:
        raise ValueError(f"index {idx} does not match series arity {f.arity}")
    if order < 0:
        raise ValueError("order must be non-negative")
    out = []
    for s in range(order + 1):
        x = tuple(s * n for n in idx)
        try:
            out.append(f.coefficient(x))
        except KeyError:
            raise ValueError(
                f"window {f.window.lo}..{f.window.hi} does not reach {x} needed for order {order}"
            ) from None
    return TargetSeries(tuple(out))


def multisect(f: TruncatedLaurentSeries, idx: Sequence[int], order: int) -> TargetSeries:
    """Multisection of ``f`` along the non-negative index vector ``idx``."""
    idx = tuple(int(i) for i in idx)
    if any(i < 0 for i in idx):
        raise ValueError(f"section index {idx} has a negative entry")
    return ray_coefficients(f, idx, order)


def phi(f: TruncatedLaurentSeries, n: int, order: int) -> TargetSeries:
    """Univariate section: keep ``z**(s*n)`` and relabel it ``T**s``."""
    if f.arity != 1:
        raise ValueError("phi acts on univariate series")
    if n < 1:
        raise ValueError("phi needs a positive step")
    return multisect(f, (n,), order)


def psi_via_shift(
    R: TruncatedLaurentSeries, m: int, n: int, k: int, order: int
) -> TargetSeries:
    """Section ``Psi_{m,n}`` of ``R(z) / (1 - t**m z**k)`` without the bivariate series.

    Reduces to ``phi(R, n - k)`` when ``n > k`` and to the constant term of
    ``R`` repeated at every order when ``n == k``.  When ``n < k`` only
    ``T**0`` survives, carrying the constant term of ``R`` (the ``s = 0``
    term is selected for every index).
    """
    if R.arity != 1:
        raise ValueError("R must be univariate")
    if m < 1 or n < 1 or k < 0:
        raise ValueError("need m, n >= 1 and k >= 0")
    const = R.coefficient((0,))
    if n < k:
        return TargetSeries((const,) + (0,) * order)
    if n == k:
        return TargetSeries((const,) * (order + 1))
    return phi(R, n - k, order)


def phi_roots_of_unity(f: TruncatedLaurentSeries, n: int) -> np.ndarray:
    """Coefficients of ``(1/n) sum_k f(z e^{2 pi i k/n})`` in complex floating point.

    Entry ``j`` is the coefficient of ``z**j``; the exact operator keeps
    ``j = s*n`` as ``T**s`` and every other entry should vanish.
    """
    if not f.is_polynomial or f.arity != 1:
        raise ValueError("need a univariate polynomial")
    box = f.support_box()
    if box is None:
        return np.zeros(1, dtype=complex)
    if box[0][0] < 0:
        raise ValueError("need a polynomial in non-negative powers")
    deg = box[1][0]
    coeffs = np.zeros(deg + 1, dtype=complex)
    for (j,), c in f.terms.items():
        coeffs[j] = c
    j = np.arange(deg + 1)
    out = np.zeros(deg + 1, dtype=complex)
    for k in range(1, n + 1):
        # f(z w) has coefficient c_j w**j; reduce k*j mod n before exponentiating
        out += coeffs * np.exp(2j * np.pi * ((k * j) % n) / n)
    return out / n


def phi_roots_of_unity_check(f: TruncatedLaurentSeries, n: int, tol: float = 1e-9) -> bool:
    """True iff the roots-of-unity average matches ``phi(f, n)`` within ``tol``."""
    numeric = phi_roots_of_unity(f, n)
    deg = len(numeric) - 1
    exact = phi(f, n, deg // n)
    expected = np.zeros(deg + 1, dtype=complex)
    expected[:: n] = exact.coefficients
    return bool(np.max(np.abs(numeric - expected)) < tol)
