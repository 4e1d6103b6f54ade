"""Exact Poincare series of the invariant algebras of binary and ternary forms.

Each series is computed two ways: by expanding the generating function
directly (the oracle) and by a closed form built from partial fraction
residues and multisections.
"""

from .binary import poincare_binary_oracle, poincare_binary_springer
from .kernels import BACKEND
from .multisection import TargetSeries, multisect, phi, psi_via_shift
from .reconstruct import RationalForm, guess_rational_form
from .series import (
    ExpansionRegion,
    FactoredRational,
    GeometricFactor,
    TruncatedLaurentSeries,
    TruncationWindow,
    expand,
    q_pochhammer,
    series_add,
    series_mul,
)
from .ternary import poincare_ternary_closed, poincare_ternary_oracle, poincare_ternary_springer

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ExpansionRegion",
    "FactoredRational",
    "GeometricFactor",
    "RationalForm",
    "TargetSeries",
    "TruncatedLaurentSeries",
    "TruncationWindow",
    "expand",
    "guess_rational_form",
    "multisect",
    "phi",
    "poincare_binary_oracle",
    "poincare_binary_springer",
    "poincare_ternary_closed",
    "poincare_ternary_oracle",
    "poincare_ternary_springer",
    "psi_via_shift",
    "q_pochhammer",
    "series_add",
    "series_mul",
]
