"""Cyclically contiguous submatrices of the N x N DFT matrix.

F has entries exp(2 pi i j k / N) with row and column indices taken mod N.
A submatrix is described by its two index runs (offset, length); the
"centered" placement puts the rows on the p highest-magnitude frequencies
and the columns on the q lowest-magnitude inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "COND_CAP",
    "SubmatrixSpec",
    "SingularSpectrum",
    "build_submatrix",
    "singular_values",
    "singular_spectrum",
    "translate",
    "adjoint",
    "complement",
    "central_offset",
    "high_frequency_offset",
]

# cond beyond this is not measurable in double precision
COND_CAP = 1e16


def central_offset(n: int) -> int:
    """Start of the half-open centered run {-n/2 <= j < n/2}, i.e. -floor(n/2)."""
    return -(n // 2)


def high_frequency_offset(N: int, p: int) -> int:
    """Start of the run of the p highest-magnitude frequencies mod N.

    This is the set {-N/2 <= k < -(N-p)/2} u {(N-p)/2 <= k < N/2}, which is
    contiguous mod N and starts at ceil((N-p)/2).
    """
    return -((p - N) // 2)


@dataclass(frozen=True)
class SubmatrixSpec:
    N: int
    p: int
    q: int
    row_offset: int = 0
    col_offset: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if not (1 <= self.p <= self.N and 1 <= self.q <= self.N):
            raise ValueError(f"need 1 <= p, q <= N, got p={self.p}, q={self.q}, N={self.N}")

    @classmethod
    def centered(cls, N: int, p: int, q: int) -> "SubmatrixSpec":
        """Rows on the high-frequency set P, columns on the central set Q."""
        return cls(N, p, q, high_frequency_offset(N, p), central_offset(q))

    @property
    def rows(self) -> np.ndarray:
        return self.row_offset + np.arange(self.p)

    @property
    def cols(self) -> np.ndarray:
        return self.col_offset + np.arange(self.q)

    @property
    def alpha(self) -> float:
        return self.p / self.N

    @property
    def beta(self) -> float:
        return self.q / self.N

    @property
    def is_tall(self) -> bool:
        return self.q <= self.p


@dataclass(frozen=True)
class SingularSpectrum:
    values: np.ndarray

    @property
    def sigma1(self) -> float:
        return float(self.values[0])

    @property
    def sigma_min(self) -> float:
        return float(self.values[-1])

    @property
    def overflow(self) -> bool:
        return not self.sigma_min > self.sigma1 / COND_CAP

    @property
    def cond(self) -> float:
        """sigma1 / sigma_min, or inf when cond would exceed COND_CAP."""
        if self.overflow:
            return math.inf
        return self.sigma1 / self.sigma_min

    @property
    def log_cond(self) -> float:
        return math.log(self.cond)


def build_submatrix(spec: SubmatrixSpec) -> np.ndarray:
    """Dense p x q complex submatrix with entries exp(2 pi i j k / N)."""
    N = spec.N
    # reduce j*k mod N exactly in integers before the trig evaluation
    jk = np.mod(np.outer(spec.rows.astype(np.int64), spec.cols.astype(np.int64)), N)
    return np.exp(2j * np.pi * jk / N)


def singular_values(spec: SubmatrixSpec) -> np.ndarray:
    return np.linalg.svd(build_submatrix(spec), compute_uv=False)


def singular_spectrum(spec: SubmatrixSpec) -> SingularSpectrum:
    """Full SVD of the built submatrix (LAPACK via numpy).

    Accuracy is absolute, about sigma1 * 1e-15 per value, so singular values
    below sigma1 * 1e-16 carry no information; cond is then reported as inf.
    """
    return SingularSpectrum(singular_values(spec))


def translate(spec: SubmatrixSpec, drow: int, dcol: int) -> SubmatrixSpec:
    """Cyclically shift both index runs; offsets are kept reduced mod N."""
    N = spec.N
    return replace(
        spec,
        row_offset=(spec.row_offset + drow) % N,
        col_offset=(spec.col_offset + dcol) % N,
    )


def adjoint(spec: SubmatrixSpec) -> SubmatrixSpec:
    """Spec of the Hermitian adjoint's index layout.

    F is symmetric, so A^H is the complex conjugate of the submatrix with rows
    and columns swapped; conjugation leaves singular values unchanged.
    """
    return SubmatrixSpec(spec.N, spec.q, spec.p, spec.col_offset, spec.row_offset)


def complement(spec: SubmatrixSpec) -> tuple[SubmatrixSpec, SubmatrixSpec]:
    """Return (D, C) for the complement construction.

    D is (N-p) x (N-q) on the complementary row and column runs; C is
    (N-p) x q with the complementary rows and A's own columns.
    """
    N, p, q = spec.N, spec.p, spec.q
    if p >= N or q >= N:
        raise ValueError("complement needs p < N and q < N")
    D = SubmatrixSpec(N, N - p, N - q, spec.row_offset + p, spec.col_offset + q)
    C = SubmatrixSpec(N, N - p, q, spec.row_offset + p, spec.col_offset)
    return D, C
