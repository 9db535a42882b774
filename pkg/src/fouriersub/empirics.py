"""Empirical exponential growth rate of cond along fixed-shape families.

For a rational shape (alpha, beta) the family is N = kD, p = alpha N,
q = beta N with D the least common denominator. We find the largest member
whose cond stays below a cap (1e16 by default, the double precision limit),
pair it with the member nearest half that size, and report the slope of
log cond between the two.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import rates
from .core import COND_CAP, SubmatrixSpec, singular_values

__all__ = [
    "RationalShape",
    "RateEstimate",
    "GridCell",
    "Infeasible",
    "empirical_rate",
    "grid_shapes",
    "rate_grid",
    "grid_csv",
    "default_threads",
]

_LN10 = math.log(10)


class Infeasible(RuntimeError):
    """The family cannot be measured below the cap (too few members)."""


@dataclass(frozen=True)
class RationalShape:
    """Shape (alpha, beta) = (alpha_num/alpha_den, beta_num/beta_den).

    Fractions are kept as given: 2/4 describes the same shape as 1/2 but a
    family with twice the step, which is how the accuracy is estimated.
    """

    alpha_num: int
    alpha_den: int
    beta_num: int
    beta_den: int

    def __post_init__(self):
        for n, d in ((self.alpha_num, self.alpha_den), (self.beta_num, self.beta_den)):
            if not (0 < n < d):
                raise ValueError(f"shape fraction {n}/{d} must lie in (0, 1)")

    @classmethod
    def parse(cls, alpha: str, beta: str) -> "RationalShape":
        """Build from "num/den" strings; decimals are rejected."""
        def split(s):
            if "/" not in s:
                raise ValueError(f"expected a fraction num/den, got {s!r}")
            n, d = s.split("/")
            return int(n), int(d)

        return cls(*split(alpha), *split(beta))

    @classmethod
    def from_fractions(cls, alpha: Fraction, beta: Fraction) -> "RationalShape":
        return cls(alpha.numerator, alpha.denominator, beta.numerator, beta.denominator)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.alpha_num, self.alpha_den)

    @property
    def beta(self) -> Fraction:
        return Fraction(self.beta_num, self.beta_den)

    @property
    def step(self) -> int:
        """Family step D: smallest N for which both p and q are integers
        under the stated (possibly unreduced) denominators."""
        return math.lcm(self.alpha_den, self.beta_den)

    def member(self, k: int) -> tuple[int, int, int]:
        N = k * self.step
        return N, N * self.alpha_num // self.alpha_den, N * self.beta_num // self.beta_den

    def coarsened(self, factor: int = 2) -> "RationalShape":
        return RationalShape(self.alpha_num * factor, self.alpha_den * factor,
                             self.beta_num * factor, self.beta_den * factor)

    def swapped(self) -> "RationalShape":
        return RationalShape(self.beta_num, self.beta_den, self.alpha_num, self.alpha_den)

    def __str__(self):
        return f"({self.alpha_num}/{self.alpha_den}, {self.beta_num}/{self.beta_den})"


@dataclass(frozen=True)
class RateEstimate:
    shape: RationalShape
    N_hi: int
    N_lo: int
    cond_hi_log: float
    cond_lo_log: float
    rho_tilde: float
    accuracy_est: float | None = None


class _Family:
    """Log cond along the family of one shape, memoized by N.

    Coarser equivalent families of the same shape share the memo. A member
    is *accepted* as lying below the cap only if its log cond is also
    consistent with the growth seen so far: it may not fall short of the
    straight-line extrapolation through the two largest accepted members
    with cond below 10^(0.8 cap) by more than a small margin. Beyond the true crossing,
    rounding makes the computed cond plateau somewhere around 1e15-1e18,
    depending on the shape, and such plateau readings can fall under the
    cap; the growth test rejects them.
    """

    def __init__(self, shape: RationalShape, cap_log10: float, memo: dict | None = None):
        self.shape = shape
        self.cap = cap_log10 * _LN10
        self.memo = {} if memo is None else memo
        self.memo.setdefault("cond", {})
        self.memo.setdefault("accepted", {})

    @property
    def evaluations(self) -> int:
        return len(self.memo["cond"])

    def log_cond_at(self, N: int) -> float:
        conds = self.memo["cond"]
        if N not in conds:
            a, b = self.shape.alpha, self.shape.beta
            p, q = int(N * a), int(N * b)
            # cond is invariant under adjoint; the tall layout is cheaper
            s = singular_values(SubmatrixSpec.centered(N, max(p, q), min(p, q)))
            conds[N] = math.log(s[0] / s[-1]) if s[-1] > s[0] / COND_CAP else math.inf
        return conds[N]

    def log_cond(self, k: int) -> float:
        return self.log_cond_at(k * self.shape.step)

    def good(self, k: int) -> bool:
        N = k * self.shape.step
        acc = self.memo["accepted"]
        if N in acc:
            return acc[N]
        lc = self.log_cond_at(N)
        ok = lc <= self.cap
        if ok:
            # anchor the trend on accepted members far enough below the cap
            # that rounding cannot have touched them
            below = [n for n, v in acc.items() if v and n < N]
            anchors = sorted(n for n in below if self.log_cond_at(n) <= _ANCHOR_FRACTION * self.cap)
            if len(anchors) < 2:
                anchors = sorted(below)
            if len(anchors) >= 2:
                n0, n1 = anchors[-2:]
                l0, l1 = self.log_cond_at(n0), self.log_cond_at(n1)
                rise = max((l1 - l0) / (n1 - n0), 0.0) * (N - n1)
                slack = _DEFICIT_ABS + (_EARLY_SLACK if lc < 0.5 * self.cap else 0.0)
                ok = lc >= l1 + (1.0 - _DEFICIT_REL) * rise - slack
        acc[N] = ok
        return ok

    def trusted(self) -> list[tuple[int, float]]:
        D = self.shape.step
        return sorted((n // D, self.log_cond_at(n)) for n, v in self.memo["accepted"].items()
                      if v and n % D == 0)


# log cond is convex along a family in practice, so a genuine member never
# falls far short of the secant extrapolation; plateau readings do
_DEFICIT_REL = 0.0
_DEFICIT_ABS = 0.25
# members with log cond below this fraction of the cap serve as trend anchors
_ANCHOR_FRACTION = 0.8
# extra slack (nats) for pre-asymptotic wobble far below the cap
_EARLY_SLACK = 0.5


def _largest_good(fam: _Family, max_N: int, hint: int | None = None) -> int:
    """Largest k whose member is accepted as below the cap.

    Geometric growth brackets the crossing; the bracket is then narrowed by
    bisection, with the next probe placed by linear extrapolation of log cond
    whenever that lands strictly inside the bracket (log cond is close to
    linear in N). ``hint`` is tried first and accepted if k good, k+1 bad.
    """
    if not fam.good(1):
        raise Infeasible(f"smallest member of {fam.shape} already exceeds the cap")
    if hint is not None and hint >= 1 and fam.good(hint) and not fam.good(hint + 1):
        return hint
    kmax = max(1, max_N // fam.shape.step)
    lo, hi = 1, None
    while hi is None:
        nxt = min(2 * lo, kmax)
        if nxt == lo:
            raise Infeasible(f"{fam.shape} stays below the cap up to N = {max_N}")
        pred = _predict(fam.trusted(), fam.cap)
        if pred is not None and lo < pred < nxt:
            nxt = pred + 1
        if fam.good(nxt):
            lo = nxt
        else:
            hi = nxt
    interp = True
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if interp:
            pred = _predict(fam.trusted(), fam.cap)
            if pred is not None:
                # probe the predicted last good member; if it is already
                # known, probe its successor to close the bracket
                cand = pred if pred > lo else lo + 1
                if lo < cand < hi:
                    mid = cand
        width = hi - lo
        if fam.good(mid):
            lo = mid
        else:
            hi = mid
        # fall back to plain bisection when extrapolation stops paying off
        interp = (hi - lo) <= width // 2 or (hi - lo) <= 2
    return lo


def _predict(pts, cap):
    if len(pts) < 2:
        return None
    (k0, l0), (k1, l1) = pts[-2:]
    slope = (l1 - l0) / (k1 - k0)
    if slope <= 0:
        return None
    return int(math.floor(k1 + (cap - l1) / slope))


def _measure(fam: _Family, max_N: int, hint=None):
    k_hi = _largest_good(fam, max_N, hint)
    if k_hi < 2:
        raise Infeasible(f"{fam.shape}: only one family member below the cap")
    # member nearest N_hi / 2; ties go to the smaller member
    k_lo = k_hi // 2
    D = fam.shape.step
    l_hi, l_lo = fam.log_cond(k_hi), fam.log_cond(k_lo)
    rho = (l_hi - l_lo) / ((k_hi - k_lo) * D)
    return k_hi, k_lo, l_hi, l_lo, rho


def empirical_rate(shape: RationalShape, cap_log10: float = 16.0, max_N: int = 1 << 15,
                   estimate_accuracy: bool = True, cache: dict | None = None) -> RateEstimate:
    """Measure rho_tilde for one shape.

    The accuracy estimate repeats the measurement on the equivalent family
    with twice the step and reports the absolute difference of the rates.
    Raises Infeasible when fewer than two members lie below the cap.
    """
    cache = {} if cache is None else cache
    fam = _Family(shape, cap_log10, cache)
    k_hi, k_lo, l_hi, l_lo, rho = _measure(fam, max_N)
    D = shape.step
    acc = None
    if estimate_accuracy:
        coarse = _Family(shape.coarsened(2), cap_log10, fam.memo)
        try:
            rho2 = _measure(coarse, max_N, hint=k_hi // 2)[4]
            acc = abs(rho - rho2)
        except Infeasible:
            acc = None
    return RateEstimate(shape, k_hi * D, k_lo * D, l_hi, l_lo, rho, acc)


# -- grids -----------------------------------------------------------------------


@dataclass(frozen=True)
class GridCell:
    shape: RationalShape
    rho_emp: float | None
    rho_kb: float
    rho_corner: float | None
    rho_best: float
    N_hi: int | None
    N_lo: int | None
    accuracy_est: float | None
    on_diagonal: bool

    @property
    def measurable(self) -> bool:
        return self.rho_emp is not None

    @property
    def ratio(self) -> float | None:
        return None if self.rho_emp is None else self.rho_emp / self.rho_best


def grid_shapes(spacing_den: int, region: str = "full") -> list[RationalShape]:
    """Interior grid points (i/d, j/d), row-major in (alpha, beta).

    ``full`` covers (0, 1)^2; ``corner`` is the zoom 0 < alpha, beta <= 0.3.
    """
    if spacing_den < 2:
        raise ValueError("spacing denominator must be >= 2")
    if region == "full":
        top = spacing_den - 1
    elif region == "corner":
        top = max(1, math.floor(0.3 * spacing_den))
    else:
        raise ValueError(f"unknown region {region!r}")
    return [RationalShape.from_fractions(Fraction(i, spacing_den), Fraction(j, spacing_den))
            for i in range(1, top + 1) for j in range(1, top + 1)]


def _cell(shape: RationalShape, cap_log10: float, max_N: int) -> GridCell:
    r = rates(float(shape.alpha), float(shape.beta))
    try:
        est = empirical_rate(shape, cap_log10, max_N)
        rho, nhi, nlo, acc = est.rho_tilde, est.N_hi, est.N_lo, est.accuracy_est
    except Infeasible:
        rho = nhi = nlo = acc = None
    return GridCell(shape, rho, r.rho_kb, r.rho_corner, r.rho_best, nhi, nlo, acc,
                    shape.alpha == shape.beta)


def _cell_star(args):
    return _cell(*args)


def default_threads() -> int:
    env = os.environ.get("FSL_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def rate_grid(spacing_den: int, region: str = "full", threads: int | None = None,
              cap_log10: float = 16.0, max_N: int = 1 << 15) -> list[GridCell]:
    """Empirical and theoretical rates on a grid of shapes.

    Only alpha >= beta is measured; the mirror cell is filled from it, which
    is exact because the (beta, alpha) family consists of the adjoints.
    Results are returned in row-major (alpha, beta) order regardless of
    ``threads``.
    """
    shapes = grid_shapes(spacing_den, region)
    todo = [s for s in shapes if s.alpha >= s.beta]
    threads = default_threads() if threads is None else threads
    args = [(s, cap_log10, max_N) for s in todo]
    if threads > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            done = list(ex.map(_cell_star, args, chunksize=1))
    else:
        done = [_cell_star(a) for a in args]
    by_key = {(c.shape.alpha, c.shape.beta): c for c in done}
    out = []
    for s in shapes:
        c = by_key.get((s.alpha, s.beta))
        if c is None:
            m = by_key[(s.beta, s.alpha)]
            r = rates(float(s.alpha), float(s.beta))
            c = GridCell(s, m.rho_emp, r.rho_kb, r.rho_corner, r.rho_best, m.N_hi, m.N_lo,
                         m.accuracy_est, False)
        out.append(c)
    return out


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(x)
    return f"{x:.10g}"


GRID_COLUMNS = ["alpha_num", "alpha_den", "beta_num", "beta_den", "alpha", "beta", "rho_emp",
                "rho_kb", "rho_corner", "rho_best", "ratio", "N_hi", "N_lo", "accuracy_est"]


def grid_csv(cells: list[GridCell]) -> str:
    """CSV with header; unmeasurable cells carry "infeasible" in rho_emp."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_COLUMNS)
    for c in cells:
        s = c.shape
        w.writerow([s.alpha_num, s.alpha_den, s.beta_num, s.beta_den,
                    _fmt(float(s.alpha)), _fmt(float(s.beta)),
                    "infeasible" if c.rho_emp is None else _fmt(c.rho_emp),
                    _fmt(c.rho_kb), _fmt(c.rho_corner), _fmt(c.rho_best), _fmt(c.ratio),
                    _fmt(c.N_hi), _fmt(c.N_lo), _fmt(c.accuracy_est)])
    return buf.getvalue()
