"""Trial vectors giving certified upper bounds sigma_min(A) <= |Av| / |v|.

Both constructions place A in centered position (rows on the p highest
frequencies, columns on the q central inputs) and take v as the central q
samples of a function whose periodized DFT is small on those rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import bar_p, bar_q
from .core import SubmatrixSpec, build_submatrix
from .kernels import (
    GaussianKernel,
    KaiserBesselKernel,
    centered_indices,
    dense_dft,
    gaussian_periodized_sample,
    kb_position,
)

__all__ = [
    "TrialCertificate",
    "gaussian_sigma",
    "kb_sigma",
    "gaussian_trial",
    "kb_trial",
    "kb_embedding_error",
]


@dataclass(frozen=True)
class TrialCertificate:
    kind: str
    v: np.ndarray
    ratio: float
    sigma_param: float
    spec: SubmatrixSpec


def _require_tall(p, q):
    if q > p:
        raise ValueError("trial vectors need q <= p; apply core.adjoint() to fat submatrices")


def gaussian_sigma(N: int, p: int, q: int) -> float:
    """Width balancing the two Gaussian tails: sigma^2 = qbar / (2 pi (1 - pbar/N))."""
    _require_tall(p, q)
    if not (2 < q <= p < N - 2):
        raise ValueError("Gaussian trial needs 2 < q <= p < N - 2")
    return math.sqrt(bar_q(q) / (2 * math.pi * (1 - bar_p(N, p) / N)))


def kb_sigma(N: int, p: int, q: int) -> float:
    """KB cutoff putting every row frequency at or beyond cutoff: (pi/2)(1 - p/N) q."""
    _require_tall(p, q)
    if not (1 <= q <= p < N):
        raise ValueError("KB trial needs 1 <= q <= p < N")
    return math.pi / 2 * (1 - p / N) * q


def _certify(kind, v, sigma, spec):
    A = build_submatrix(spec)
    ratio = float(np.linalg.norm(A @ v) / np.linalg.norm(v))
    return TrialCertificate(kind, v, ratio, sigma, spec)


def gaussian_trial(N: int, p: int, q: int) -> TrialCertificate:
    sigma = gaussian_sigma(N, p, q)
    spec = SubmatrixSpec.centered(N, p, q)
    g = GaussianKernel(sigma, N)
    v = np.array([gaussian_periodized_sample(g, int(j)) for j in spec.cols])
    return _certify("gaussian", v, sigma, spec)


def kb_trial(N: int, p: int, q: int) -> TrialCertificate:
    sigma = kb_sigma(N, p, q)
    spec = SubmatrixSpec.centered(N, p, q)
    v = kb_position(KaiserBesselKernel(sigma, q), spec.cols.astype(float))
    return _certify("kb", v, sigma, spec)


def kb_embedding_error(cert: TrialCertificate) -> float:
    """max_r |(A v)_r - (F f)_{P(r)}| / |f| for the KB trial.

    f is the full length-N sample vector; compact support makes it vanish
    off the central q indices, so this should be at rounding level.
    """
    spec = cert.spec
    N = spec.N
    f = kb_position(KaiserBesselKernel(cert.sigma_param, spec.q), centered_indices(N).astype(float))
    Ff = dense_dft(f)
    rows = np.mod(spec.rows - centered_indices(N)[0], N)
    Av = build_submatrix(spec) @ cert.v
    return float(np.max(np.abs(Av - Ff[rows])) / np.linalg.norm(f))
