"""Fit a truncated series to ``N(T) / prod (1 - T**e)`` for a given exponent multiset."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple


@dataclass(frozen=True)
class RationalForm:
    numerator: Tuple[int, ...]
    denominator_exponents: Tuple[int, ...]

    def __post_init__(self):
        num = list(int(c) for c in self.numerator)
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        object.__setattr__(self, "numerator", tuple(num) or (0,))
        exps = tuple(sorted(int(e) for e in self.denominator_exponents))
        if any(e < 1 for e in exps):
            raise ValueError("denominator exponents must be positive")
        object.__setattr__(self, "denominator_exponents", exps)

    def expand(self, order: int) -> Tuple[int, ...]:
        """Power series coefficients up to ``T**order``."""
        out = [0] * (order + 1)
        for i, c in enumerate(self.numerator[: order + 1]):
            out[i] = c
        for e in self.denominator_exponents:
            for s in range(e, order + 1):
                out[s] += out[s - e]
        return tuple(out)

    def __str__(self):
        return self.format("plain")

    def format(self, style: str = "plain") -> str:
        num = format_polynomial(self.numerator, style)
        if not self.denominator_exponents:
            return num
        if style == "latex":
            den = "".join(f"(1-T^{{{e}}})" if e > 1 else "(1-T)" for e in self.denominator_exponents)
            return rf"\frac{{{num}}}{{{den}}}"
        den = "".join(f"(1-T^{e})" if e > 1 else "(1-T)" for e in self.denominator_exponents)
        if len(self.denominator_exponents) > 1:
            den = f"({den})"
        if sum(1 for c in self.numerator if c) > 1:
            num = f"({num})"
        return f"{num}/{den}"


def format_polynomial(coeffs: Sequence[int], style: str = "plain") -> str:
    """``sum a_s T**s`` with zero terms omitted."""
    parts = []
    for s, c in enumerate(coeffs):
        if c == 0:
            continue
        if s == 0:
            mono = ""
        elif s == 1:
            mono = "T"
        elif style == "latex":
            mono = f"T^{{{s}}}"
        else:
            mono = f"T^{s}"
        mag = abs(c)
        body = mono if (mono and mag == 1) else f"{mag}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def guess_rational_form(coeffs: Sequence[int], exponents: Iterable[int]) -> Optional[RationalForm]:
    """Numerator ``N(T)`` with ``coeffs == N / prod (1 - T**e)`` up to the given order.

    Returns None when the product of the series with the denominator does
    not leave at least ``max(e) + 2`` trailing zero coefficients, or when
    the numerator degree is not below ``order - sum(e)``.
    """
    coeffs = [int(c) for c in coeffs]
    exps = sorted(int(e) for e in exponents)
    if any(e < 1 for e in exps):
        raise ValueError("exponents must be positive")
    order = len(coeffs) - 1
    if sum(exps) >= order:
        raise ValueError(f"order {order} too small for denominator exponents {exps}")
    prod = list(coeffs)
    for e in exps:
        # multiply by (1 - T**e); iterate downwards so sources are unmodified
        for s in range(order, e - 1, -1):
            prod[s] -= prod[s - e]
    deg = max((s for s, c in enumerate(prod) if c), default=-1)
    margin = (max(exps) if exps else 0) + 2
    if order - deg < margin or deg >= order - sum(exps):
        return None
    return RationalForm(tuple(prod[: deg + 1]) or (0,), tuple(exps))
