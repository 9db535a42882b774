"""One-sided warped sinc sums S_sigma(a, b) and numerical checks of their bounds.

    S_sigma(a, b) = sum_{m >= 0} sinc(sqrt(x^2 - sigma^2)) - sinc(x),  x = a m + b

The summand decays like x^-2, so partial sums are paired with a rigorous
tail bound built from the pointwise envelopes

    |1/sqrt(x^2-s^2) - 1/x| <= s^2 / (sqrt(1 - s/X) x^3),   x >= X > s
    |sin sqrt(x^2-s^2) - sin x| <= R(x)^2/2 + R(x),  R(x) <= s^2/x
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .specfun import sinc, warp_deviation, warped_sinc

__all__ = [
    "SincSumParams",
    "NonConvergence",
    "warp_envelope",
    "warp_tail_bound",
    "sinc_sum",
    "positive_sum",
    "LemmaCheck",
    "lemma_grid",
    "verify_lemma_bounds",
    "lemma_report_csv",
    "MAX_TERMS",
]

MAX_TERMS = 10**8
_CHUNK = 1 << 20


class NonConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class SincSumParams:
    a: float
    sigma: float
    b: float

    def __post_init__(self):
        if not self.a >= math.pi:
            raise ValueError("spacing a must be >= pi")
        if not 0 < self.sigma < self.a / 2:
            raise ValueError("need 0 < sigma < a/2")
        if not self.b > self.sigma:
            raise ValueError("need offset b > sigma")

    @property
    def alpha(self) -> float:
        return 1 - 2 * self.sigma / self.a


def warp_envelope(x, sigma, X):
    """Pointwise bound on |sinc(sqrt(x^2-sigma^2)) - sinc(x)| for x >= X > sigma."""
    x = np.asarray(x, dtype=float)
    s2 = sigma * sigma
    return s2 / (math.sqrt(1 - sigma / X) * x**3) + s2 * s2 / (2 * x**3) + s2 / x**2


def warp_tail_bound(a: float, b: float, sigma: float, M: int) -> float:
    """Bound on sum_{m >= M} |sinc(sqrt(x^2-sigma^2)) - sinc(x)|, x = a m + b.

    First term plus the integral of the (decreasing) envelope from X = aM + b.
    """
    X = a * M + b
    if not X > sigma:
        return math.inf
    s2 = sigma * sigma
    first = float(warp_envelope(X, sigma, X))
    integral = (s2 / (2 * math.sqrt(1 - sigma / X) * X**2) + s2 * s2 / (4 * X**2) + s2 / X) / a
    return min(first + integral, _oscillatory_tail_bound(a, sigma, X))


def _oscillatory_tail_bound(a: float, sigma: float, X: float) -> float:
    # With y = sqrt(x^2 - sigma^2), R = x - y, the summand splits as
    #   sin(y)(1/y - 1/x) - sin(x)(1 - cos R)/x - cos(x) sin(R)/x.
    # The first two are O(x^-3). sin(R)/x decreases once R(X) <= pi/2, so Abel
    # summation bounds the last by sin(R(X))/X / |sin(a/2)|.
    s = abs(math.sin(a / 2))
    R = X - math.sqrt(X * X - sigma * sigma)
    if s < 1e-12 or R > math.pi / 2:
        return math.inf
    s2 = sigma * sigma
    cube = 1 / X**3 + 1 / (2 * a * X**2)  # first term plus integral of x^-3
    return (s2 / math.sqrt(1 - sigma / X) + s2 * s2 / 2) * cube + math.sin(R) / X / s


def _terms_needed(bound_fn, tol):
    # smallest power-of-two-ish M with bound_fn(M) <= tol, then bisect down
    M = 1
    while bound_fn(M) > tol:
        M *= 2
        if M > MAX_TERMS:
            raise NonConvergence(f"tail bound above {tol:g} even at {MAX_TERMS} terms")
    lo, hi = M // 2, M
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound_fn(mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi


def _chunked_fsum(term_fn, M):
    parts = []
    for start in range(0, M, _CHUNK):
        m = np.arange(start, min(M, start + _CHUNK), dtype=float)
        parts.append(math.fsum(term_fn(m)))
    return math.fsum(parts)


def _sinc_sum_terms(a, b, sigma):
    def terms(m):
        x = a * m + b
        return warped_sinc(x, sigma) - sinc(x)

    return terms


def sinc_sum(params: SincSumParams, tol: float = 1e-8) -> tuple[float, float]:
    """Evaluate S_sigma(a, b) to within tol; returns (value, tail_bound)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b, sigma = params.a, params.b, params.sigma
    M = _terms_needed(lambda M: warp_tail_bound(a, b, sigma, M), tol)
    value = _chunked_fsum(_sinc_sum_terms(a, b, sigma), M)
    return value, warp_tail_bound(a, b, sigma, M)


def positive_sum(term_fn, tail_fn, tol):
    """Partial sum of a nonnegative series plus its tail bound: (partial, tail)."""
    M = _terms_needed(tail_fn, tol)
    return _chunked_fsum(term_fn, M), tail_fn(M)


# -- the individual lemma quantities -----------------------------------------


def _sin_r_sum(a, b, sigma, tol):
    # sum |sin R(x)| / x, tail uses sin R <= R <= s^2/x
    s2 = sigma * sigma

    def terms(m):
        x = a * m + b
        return np.abs(np.sin(warp_deviation(x, sigma))) / x

    def tail(M):
        X = a * M + b
        return s2 / X**2 + s2 / (a * X)

    return positive_sum(terms, tail, tol)


def _cos_r_sum(a, b, sigma, tol):
    # sum |cos R(x) - 1| / x, tail uses 1 - cos R <= R^2/2 <= s^4 / (2 x^2)
    s4 = sigma**4

    def terms(m):
        x = a * m + b
        r = warp_deviation(x, sigma)
        return 2 * np.sin(r / 2) ** 2 / x

    def tail(M):
        X = a * M + b
        return s4 / (2 * X**3) + s4 / (4 * a * X**2)

    return positive_sum(terms, tail, tol)


def _numerator_sum(a, b, sigma, tol):
    # sum |sin sqrt(x^2 - s^2) - sin x| / x
    s2 = sigma * sigma

    def terms(m):
        x = a * m + b
        return np.abs(np.sin(np.sqrt((x - sigma) * (x + sigma))) - np.sin(x)) / x

    def tail(M):
        X = a * M + b
        return s2 * s2 / (2 * X**3) + s2 / X**2 + (s2 * s2 / (4 * X**2) + s2 / X) / a

    return positive_sum(terms, tail, tol)


@dataclass(frozen=True)
class LemmaCheck:
    a: float
    sigma: float
    b: float
    lemma_id: str
    observed: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.observed / self.bound

    @property
    def ok(self) -> bool:
        # R(x) <= sigma^2/x is an equality at x = sigma; allow rounding there
        return self.observed <= self.bound * (1 + 1e-12)


def lemma_grid(n_a: int = 5, n_sigma: int = 5, n_b: int = 4) -> list[tuple[float, float, float]]:
    """Hypothesis-respecting (a, sigma, b) points.

    a on a log grid in [pi, 100 pi], sigma/a in (0, 1/2), b/a in [1/2, 2].
    """
    a_vals = math.pi * np.logspace(0, 2, n_a)
    s_frac = np.linspace(0.02, 0.49, n_sigma)
    b_frac = np.linspace(0.5, 2.0, n_b)
    return [(float(a), float(a * s), float(a * bf)) for a in a_vals for s in s_frac for bf in b_frac]


def verify_lemma_bounds(points, tol: float = 1e-6, n_pointwise: int = 200) -> list[LemmaCheck]:
    """Evaluate every warped-sinc lemma quantity at each (a, sigma, b).

    Observed values are partial sums plus their rigorous tail bound (or minus,
    for the signed sum S, whose absolute value is bounded by |partial| + tail),
    so ``observed <= bound`` is a certified statement. The pointwise
    inequalities are checked on a log grid of x and reported as their
    worst-case ratio lhs/rhs with bound 1.
    """
    out = []
    for a, sigma, b in points:
        alpha = 1 - 2 * sigma / a
        val, tail = sinc_sum(SincSumParams(a, sigma, b), tol)
        out.append(LemmaCheck(a, sigma, b, "sincwarp", abs(val) + tail, 5 / (2 * a * math.sqrt(alpha)) + 5))
        if b >= a / 2:
            s, t = _numerator_sum(a, b, sigma, tol)
            out.append(LemmaCheck(a, sigma, b, "sinwarp", s + t, 5.0))
            s, t = _sin_r_sum(a, b, sigma, tol)
            out.append(LemmaCheck(a, sigma, b, "sinR", s + t, 2.0))
            s, t = _cos_r_sum(a, b, sigma, tol)
            out.append(LemmaCheck(a, sigma, b, "cosR1", s + t, 3.0))
        # pointwise checks, evaluated from the raw formulas (not the
        # rearranged forms used elsewhere); x/sigma <= 1e3 keeps the
        # cancellation error below 1e-9 relative
        x = b * np.logspace(0, 3, n_pointwise)
        lhs = 1 / np.sqrt(x * x - sigma * sigma) - 1 / x
        rhs = sigma**2 / (math.sqrt(1 - sigma / b) * x**3)
        out.append(LemmaCheck(a, sigma, b, "denomwarp", float(np.max(lhs / rhs)), 1.0))
        xr = sigma * np.logspace(0, 3, n_pointwise)
        r_direct = xr - np.sqrt(xr * xr - sigma * sigma)
        out.append(LemmaCheck(a, sigma, b, "Rbnd", float(np.max(r_direct * xr / sigma**2)), 1.0))
    return out


def lemma_report_csv(checks: list[LemmaCheck]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "sigma", "b", "lemma_id", "observed", "bound", "ratio"])
    for c in checks:
        w.writerow([f"{c.a:.10g}", f"{c.sigma:.10g}", f"{c.b:.10g}", c.lemma_id,
                    f"{c.observed:.10g}", f"{c.bound:.10g}", f"{c.ratio:.10g}"])
    return buf.getvalue()
