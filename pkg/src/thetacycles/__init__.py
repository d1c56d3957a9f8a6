"""Theta cycles of modular forms on SL2(Z) modulo p and p^2."""
from __future__ import annotations

from .cycle import (CycleReport, FiltrationRecord, HypothesisError, classify_points,
                    compute_cycle, exceptional_indices, is_exceptional, is_ordinary)
from .filtration import (FiltrationResult, InsufficientPrecision, factor_filtration,
                         membership, weight_filtration, weight_from_factor)
from .forms import (FormExpr, bernoulli, delta_qexp, dimension, echelon_basis,
                    eisenstein_qexp, eval_form_expr, modified_serre_derivatives,
                    serre_derivative, theta_power_expansion)
from .series import Modulus, QSeries

__version__ = "0.1.0"

__all__ = [
    "CycleReport", "FiltrationRecord", "HypothesisError", "classify_points", "compute_cycle",
    "exceptional_indices", "is_exceptional", "is_ordinary", "FiltrationResult",
    "InsufficientPrecision", "factor_filtration", "membership", "weight_filtration",
    "weight_from_factor", "FormExpr", "bernoulli", "delta_qexp", "dimension", "echelon_basis",
    "eisenstein_qexp", "eval_form_expr", "modified_serre_derivatives", "serre_derivative",
    "theta_power_expansion", "Modulus", "QSeries",
]
