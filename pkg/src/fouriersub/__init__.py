"""Conditioning of cyclically contiguous submatrices of the DFT matrix.

Condition numbers by SVD, explicit lower bounds with constants, trial-vector
certificates for sigma_min, numerical checks of the underlying Fourier pair
and sinc-sum estimates, and empirical growth rates over shape space.
"""

from .bounds import BoundReport, RateSet, alpha_star, bound_report, rates
from .core import COND_CAP, SingularSpectrum, SubmatrixSpec, singular_spectrum, singular_values
from .empirics import GridCell, Infeasible, RateEstimate, RationalShape, empirical_rate, rate_grid

__version__ = "0.1.0"

__all__ = [
    "COND_CAP",
    "SubmatrixSpec",
    "SingularSpectrum",
    "singular_values",
    "singular_spectrum",
    "BoundReport",
    "bound_report",
    "RateSet",
    "rates",
    "alpha_star",
    "RationalShape",
    "RateEstimate",
    "GridCell",
    "Infeasible",
    "empirical_rate",
    "rate_grid",
]
