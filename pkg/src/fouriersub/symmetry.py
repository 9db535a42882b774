"""Exact and asymptotic symmetries of cond over shape space.

For p + q < N, complementing both index sets gives D with

    cond(A) / cond(D) = sqrt(1 - sigma_min(C)^2 / N),

C being the complementary rows restricted to A's columns. This is why the
inversion (p, q) -> (N-p, N-q) becomes a symmetry only as N grows.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .bounds import E_PI, rates
from .core import COND_CAP, SubmatrixSpec, adjoint, complement, singular_values

__all__ = [
    "ComplementReport",
    "condrat_check",
    "NearSymmetryCell",
    "near_symmetry_map",
    "near_symmetry_csv",
    "corollary_region",
    "COROLLARY_THRESHOLD",
]

COROLLARY_THRESHOLD = 1 - 4 / E_PI


@dataclass(frozen=True)
class ComplementReport:
    spec: SubmatrixSpec
    reflected: bool
    cond_A: float
    cond_D: float
    sigma_min_C: float
    # the four singular value identities, as residuals
    resid_AC: float
    resid_CA: float
    resid_DC: float
    resid_0D: float

    @property
    def measurable(self) -> bool:
        return math.isfinite(self.cond_A) and math.isfinite(self.cond_D)

    @property
    def lhs(self) -> float:
        return self.cond_A / self.cond_D

    @property
    def rhs(self) -> float:
        return math.sqrt(1 - self.sigma_min_C**2 / self.spec.N)

    @property
    def identity_residual(self) -> float:
        return abs(self.lhs - self.rhs)


def _cond(s):
    return s[0] / s[-1] if s[-1] > s[0] / COND_CAP else math.inf


def condrat_check(spec: SubmatrixSpec) -> ComplementReport:
    """Build A, D, C and evaluate the complement identity and its four parts.

    Fat A is first replaced by its adjoint layout (cond is unchanged), so
    that the identities apply in their tall form.
    """
    N = spec.N
    if spec.p + spec.q >= N:
        raise ValueError("complement identity needs p + q < N")
    reflected = spec.p < spec.q
    work = adjoint(spec) if reflected else spec
    D, C = complement(work)
    sa, sd, sc = singular_values(work), singular_values(D), singular_values(C)
    return ComplementReport(
        spec=spec,
        reflected=reflected,
        cond_A=_cond(sa),
        cond_D=_cond(sd),
        sigma_min_C=float(sc[-1]),
        resid_AC=abs(sa[-1] ** 2 + sc[0] ** 2 - N),
        resid_CA=abs(sa[0] ** 2 + sc[-1] ** 2 - N),
        resid_DC=abs(sd[-1] ** 2 + sc[0] ** 2 - N),
        resid_0D=abs(sd[0] ** 2 - N),
    )


@dataclass(frozen=True)
class NearSymmetryCell:
    N: int
    p: int
    q: int
    cond: float
    delta_inversion: float | None

    @property
    def cond_log10(self) -> float:
        return math.log10(self.cond)


def near_symmetry_map(N: int) -> list[NearSymmetryCell]:
    """cond of the centered p x q submatrix for all 1 <= p, q <= N - 1.

    delta_inversion = |log cond(p, q) - log cond(N-p, N-q)| (natural log);
    None when either side overflows. Rows are ordered by (p, q).
    """
    if N > 64:
        raise ValueError("exhaustive map is meant for small N")
    conds = {}
    for p in range(1, N):
        for q in range(1, p + 1):
            s = singular_values(SubmatrixSpec.centered(N, p, q))
            conds[p, q] = conds[q, p] = _cond(s)
    cells = []
    for p in range(1, N):
        for q in range(1, N):
            c, ci = conds[p, q], conds[N - p, N - q]
            delta = abs(math.log(c) - math.log(ci)) if math.isfinite(c) and math.isfinite(ci) else None
            cells.append(NearSymmetryCell(N, p, q, c, delta))
    return cells


def near_symmetry_csv(cells: list[NearSymmetryCell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "p", "q", "cond_log10", "delta_inversion"])
    for c in cells:
        w.writerow([c.N, c.p, c.q,
                    "inf" if math.isinf(c.cond) else f"{c.cond_log10:.10g}",
                    "" if c.delta_inversion is None else f"{c.delta_inversion:.10g}"])
    return buf.getvalue()


def corollary_region(alpha: float, beta: float):
    """Corner rate transported to the (1, 1) corner via the complement identity."""
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise ValueError("alpha and beta must lie in (0, 1)")
    if alpha > COROLLARY_THRESHOLD and beta > COROLLARY_THRESHOLD:
        return rates(1 - alpha, 1 - beta).rho_corner
    return None
