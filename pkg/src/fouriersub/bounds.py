"""Closed-form lower bounds on cond(A), sigma_min upper bounds, and rates.

Every evaluator takes raw (N, p, q) and symmetrizes to the tall case
(p >= q) itself, since cond(A) = cond(A^H). A bound whose hypotheses fail
returns None; it is never silently replaced by a number.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .core import SubmatrixSpec, singular_spectrum
from .specfun import bessel_jn_all, chebyshev_t, log_bessel_i0

__all__ = [
    "E_PI",
    "bar_q",
    "bar_p",
    "tall",
    "log_bound_gaussian",
    "log_bound_kb",
    "log_bound_corner",
    "log_bound_pan",
    "log_bound_liliao",
    "bound_gaussian",
    "bound_kb",
    "bound_corner",
    "pan_bound",
    "liliao_bound",
    "liliao_valid",
    "liliao_cond_bound",
    "log_sigma_ub_gaussian",
    "log_sigma_ub_kb",
    "log_sigma_ub_corner",
    "sigma_min_upper_bounds",
    "chebyshev_lowrank",
    "RateSet",
    "rates",
    "alpha_star",
    "prolate_matrix",
    "slepian_lambda0",
    "BoundReport",
    "bound_report",
]

E_PI = math.e * math.pi


def bar_q(q: int) -> int:
    """Largest even integer strictly smaller than q."""
    return q - 2 if q % 2 == 0 else q - 1


def bar_p(N: int, p: int) -> int:
    """Smallest integer larger than p with the parity of N."""
    return p + 1 if (p + 1 - N) % 2 == 0 else p + 2


def tall(p: int, q: int) -> tuple[int, int]:
    return max(p, q), min(p, q)


def _exp_or_inf(logval):
    if logval is None:
        return None
    return math.exp(logval) if logval < 709.0 else math.inf


# -- sigma_min upper bounds (log form) ----------------------------------------


def log_sigma_ub_gaussian(N: int, p: int, q: int):
    p, q = tall(p, q)
    if not (2 < q <= p < N - 2):
        return None
    qb, shrink = bar_q(q), 1 - bar_p(N, p) / N
    return math.log(6) + 0.25 * math.log(qb / shrink) + 0.5 * math.log(N) - math.pi / 4 * qb * shrink


def log_sigma_ub_kb(N: int, p: int, q: int):
    p, q = tall(p, q)
    if not (1 <= q <= p < N):
        return None
    alpha = p / N
    denom = _log_i0_minus_one(math.pi / 2 * (1 - alpha) * q)
    return math.log(2 * math.sqrt(N) * (1 + 6 * math.sqrt(alpha) * q)) - denom


def log_sigma_ub_corner(N: int, p: int, q: int):
    p, q = tall(p, q)
    if not (1 < q <= p < 4 * N / E_PI + 1):
        return None
    x = E_PI * (p - 1) / (4 * N)
    return math.log(2 * math.sqrt(p * q)) - math.log1p(-x) + (q - 1) * math.log(x)


def _log_i0_minus_one(z):
    # log(I0(z) - 1), accurate for small z where I0(z) - 1 ~ z^2/4
    if z < 1.0:
        y = 0.25 * z * z
        term, total, k = y, y, 1
        while term > 1e-17 * total:
            k += 1
            term *= y / (k * k)
            total += term
        return math.log(total)
    li = log_bessel_i0(z)
    return li + math.log1p(-math.exp(-li))


def sigma_min_upper_bounds(N: int, p: int, q: int) -> dict:
    """Right-hand sides of the three sigma_min lemmas; None where inapplicable."""
    return {
        "gaussian": _exp_or_inf(log_sigma_ub_gaussian(N, p, q)),
        "kb": _exp_or_inf(log_sigma_ub_kb(N, p, q)),
        "corner": _exp_or_inf(log_sigma_ub_corner(N, p, q)),
    }


# -- condition number lower bounds --------------------------------------------


def log_bound_gaussian(N: int, p: int, q: int):
    p, q = tall(p, q)
    if not (2 < q <= p < N - 2):
        return None
    qb, shrink = bar_q(q), 1 - bar_p(N, p) / N
    return (0.5 * math.log(p) + 0.25 * math.log(shrink) - math.log(6) - 0.25 * math.log(qb)
            - 0.5 * math.log(N) + math.pi / 4 * shrink * qb)


def log_bound_kb(N: int, p: int, q: int):
    p, q = tall(p, q)
    if not (1 <= q <= p < N):
        return None
    return _log_i0_minus_one(math.pi / 2 * (1 - p / N) * q) - math.log(2 * (math.sqrt(N / p) + 6 * q))


def log_bound_corner(N: int, p: int, q: int):
    p, q = tall(p, q)
    if not (1 < q <= p < 4 * N / E_PI + 1):
        return None
    x = E_PI * (p - 1) / (4 * N)
    return math.log1p(-x) - math.log(2 * math.sqrt(q)) - (q - 1) * math.log(x)


def bound_gaussian(N: int, p: int, q: int):
    """Periodized-Gaussian lower bound on cond(A), or None."""
    return _exp_or_inf(log_bound_gaussian(N, p, q))


def bound_kb(N: int, p: int, q: int):
    """Kaiser-Bessel lower bound (I0(pi(1-p/N)q/2) - 1) / (2 (sqrt(N/p) + 6q))."""
    return _exp_or_inf(log_bound_kb(N, p, q))


def bound_corner(N: int, p: int, q: int):
    """Low-rank (Bessel-Chebyshev) lower bound, valid for 1 < q <= p < 4N/(e pi) + 1."""
    return _exp_or_inf(log_bound_corner(N, p, q))


def log_bound_pan(N: int):
    if N % 2:
        return None
    return 0.5 * math.log(N) + (N / 4 - 1) * math.log(2)


def pan_bound(N: int) -> float:
    """sqrt(N) 2^(N/4 - 1), for the N/2 x N/2 submatrix."""
    if N % 2:
        raise ValueError("Pan's bound needs even N so that p = q = N/2")
    return math.sqrt(N) * 2.0 ** (N / 4 - 1) if N < 4000 else math.inf


def liliao_bound(N: int, p: int, q: int) -> float:
    """Finite-difference upper bound sqrt(8pq) (pi p/N)^(q-1) on sigma_min."""
    p, q = tall(p, q)
    return math.sqrt(8 * p * q) * (math.pi * p / N) ** (q - 1)


def liliao_valid(N: int, p: int, q: int) -> bool:
    """Validity flag alpha <= 1/(C(q) sqrt(p)) with C(q) taken as 4^q."""
    p, q = tall(p, q)
    return p / N <= 1 / (4.0**q * math.sqrt(p))


def log_bound_liliao(N: int, p: int, q: int):
    """log of sqrt(p) / liliao_bound, i.e. the cond lower bound it implies.

    The validity restriction is reported by :func:`liliao_valid` only.
    """
    p, q = tall(p, q)
    return 0.5 * math.log(p) - 0.5 * math.log(8 * p * q) - (q - 1) * math.log(math.pi * p / N)


def liliao_cond_bound(N: int, p: int, q: int):
    return _exp_or_inf(log_bound_liliao(N, p, q))


# -- Chebyshev low-rank approximation of exp(i x t) -----------------------------


def chebyshev_lowrank(N: int, p: int, q: int, nterms: int) -> tuple[np.ndarray, float, np.ndarray]:
    """Rank-``nterms`` Bessel-Chebyshev approximation of the phase matrix.

    The phase matrix exp(i x_j t_k) on x_j = (-1 + 2j/(p-1)) W, t_k = -1 +
    2k/(q-1), j, k from 0, with W = pi (q-1)(p-1) / (2N), equals the p x q DFT
    submatrix up to diagonal unitary factors. Returns (approximation,
    operator-norm residual, phase matrix).
    """
    p, q = tall(p, q)
    if q < 2:
        raise ValueError("need q > 1 for the t grid")
    W = math.pi * (q - 1) * (p - 1) / (2 * N)
    if not q - 1 > W:
        raise ValueError("q - 1 <= W: the tail estimate diverges")
    x = (-1 + 2 * np.arange(p) / (p - 1)) * W
    t = -1 + 2 * np.arange(q) / (q - 1)
    phase = np.exp(1j * np.outer(x, t))
    J = np.array([bessel_jn_all(max(nterms - 1, 0), xj) for xj in x])
    approx = np.zeros((p, q), dtype=complex)
    for n in range(nterms):
        u = J[:, n] * (1.0 if n == 0 else 2 * 1j**n)
        approx += np.outer(u, chebyshev_t(n, t))
    resid = float(np.linalg.norm(phase - approx, 2))
    return approx, resid, phase


# -- asymptotic rates ------------------------------------------------------------


@dataclass(frozen=True)
class RateSet:
    alpha: float
    beta: float
    rho_gaussian: float
    rho_kb: float
    rho_corner: float | None
    rho_prolate: float
    rho_moitra: float

    @property
    def rho_best(self) -> float:
        """Strongest proven lower-bound rate (the prolate rate is an
        asymptotic estimate, not a bound, and is excluded)."""
        cands = [self.rho_gaussian, self.rho_kb, self.rho_moitra]
        if self.rho_corner is not None:
            cands.append(self.rho_corner)
        return max(cands)


def rates(alpha: float, beta: float) -> RateSet:
    """Exponential rates rho(alpha, beta), symmetrized over alpha <-> beta."""
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise ValueError("alpha and beta must lie in (0, 1)")
    lo, hi = min(alpha, beta), max(alpha, beta)
    core = lo - alpha * beta
    corner = lo * math.log(4 / (E_PI * hi)) if hi < 4 / E_PI else None
    return RateSet(
        alpha=alpha,
        beta=beta,
        rho_gaussian=math.pi / 4 * core,
        rho_kb=math.pi / 2 * core,
        rho_corner=corner,
        rho_prolate=lo * math.log(1 / math.tan(math.pi * hi / 4)),
        rho_moitra=math.log(math.sqrt(2)) * core,
    )


def alpha_star(tol: float = 1e-12) -> float:
    """Crossover of the corner and KB rates: log(4/(e pi a)) = (pi/2)(1 - a)."""
    h = lambda a: math.log(4 / (E_PI * a)) - math.pi / 2 * (1 - a)  # noqa: E731
    lo, hi = 1e-6, 4 / E_PI
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if h(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- prolate matrix ----------------------------------------------------------


def prolate_matrix(q: int, alpha: float) -> np.ndarray:
    """P(q, alpha/2) with entries alpha sinc(pi alpha (j - k))."""
    from .specfun import sinc

    d = np.subtract.outer(np.arange(q), np.arange(q)).astype(float)
    return alpha * sinc(math.pi * alpha * d)


def slepian_lambda0(q: int, alpha: float) -> float:
    """Slepian's large-q asymptotic for the smallest eigenvalue of P(q, alpha/2)."""
    c = math.cos(math.pi * alpha)
    theta = 1 / math.tan(math.pi * alpha / 4) ** 2
    return 2**2.25 * math.sqrt(math.pi * q) * (1 - c) ** 0.25 / math.sqrt(1 + c) * theta ** (-q)


# -- per-submatrix report -----------------------------------------------------

_LOG10E = math.log10(math.e)


def _log10(logval):
    return None if logval is None else logval * _LOG10E


@dataclass
class BoundReport:
    N: int
    p: int
    q: int
    cond_computed: float
    sigma1: float
    sigma_min: float
    lb_gaussian: float | None
    lb_kb: float | None
    lb_corner: float | None
    lb_pan: float | None
    lb_liliao_derived: float | None
    ub_sigma_min_gaussian: float | None
    ub_sigma_min_kb: float | None
    ub_sigma_min_corner: float | None
    liliao_valid: bool
    logs10: dict = field(default_factory=dict)

    @property
    def overflow(self) -> bool:
        return math.isinf(self.cond_computed)

    @property
    def lower_bounds(self) -> dict:
        return {k: getattr(self, k) for k in
                ("lb_gaussian", "lb_kb", "lb_corner", "lb_pan", "lb_liliao_derived")
                if getattr(self, k) is not None}

    @property
    def best_lb(self) -> float | None:
        lbs = self.lower_bounds
        return max(lbs.values()) if lbs else None

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "logs10"}
        if self.overflow:
            d["cond_computed"] = "overflow"
        for k, v in d.items():
            if isinstance(v, float) and math.isinf(v):
                d[k] = "inf"
        d["best_lb"] = self.best_lb
        for k, v in self.logs10.items():
            d[k + "_log10"] = v
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        kw = {}
        logs = {}
        names = {f.name for f in fields(cls)}
        for k, v in d.items():
            if k.endswith("_log10"):
                logs[k[: -len("_log10")]] = v
            elif k in names:
                kw[k] = math.inf if v in ("overflow", "inf") else v
        return cls(**kw, logs10=logs)


def bound_report(N: int, p: int, q: int) -> BoundReport:
    """Compute cond of the centered submatrix and every applicable bound."""
    spec = SubmatrixSpec.centered(N, p, q)
    sp = singular_spectrum(spec)
    logs = {
        "lb_gaussian": log_bound_gaussian(N, p, q),
        "lb_kb": log_bound_kb(N, p, q),
        "lb_corner": log_bound_corner(N, p, q),
        "lb_pan": log_bound_pan(N) if (p == q == N // 2 and N % 2 == 0) else None,
        "lb_liliao_derived": log_bound_liliao(N, p, q),
        "ub_sigma_min_gaussian": log_sigma_ub_gaussian(N, p, q),
        "ub_sigma_min_kb": log_sigma_ub_kb(N, p, q),
        "ub_sigma_min_corner": log_sigma_ub_corner(N, p, q),
    }
    logs10 = {k: _log10(v) for k, v in logs.items()}
    logs10["cond_computed"] = None if sp.overflow else math.log10(sp.cond)
    return BoundReport(
        N=N, p=p, q=q,
        cond_computed=sp.cond,
        sigma1=sp.sigma1,
        sigma_min=sp.sigma_min,
        liliao_valid=liliao_valid(N, p, q),
        logs10=logs10,
        **{k: _exp_or_inf(v) for k, v in logs.items()},
    )
