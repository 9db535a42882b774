import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fouriersub.bounds import bar_p, bar_q, sigma_min_upper_bounds
from fouriersub.core import SubmatrixSpec, build_submatrix, singular_values, translate
from fouriersub.specfun import bessel_i0
from fouriersub.trials import (
    gaussian_sigma,
    gaussian_trial,
    kb_embedding_error,
    kb_sigma,
    kb_trial,
)


@st.composite
def tall_shapes(draw, max_N=64):
    N = draw(st.integers(4, max_N))
    p = draw(st.integers(1, N - 1))
    q = draw(st.integers(1, p))
    return N, p, q


def test_bar_values():
    assert bar_q(8) == 6 and bar_p(16, 8) == 10
    assert bar_q(3) == 2
    assert bar_p(17, 8) == 9
    assert gaussian_sigma(16, 8, 8) ** 2 == pytest.approx(6 / (2 * math.pi * 0.375), rel=1e-15)


@given(st.integers(3, 200), st.integers(1, 200))
def test_bar_defining_properties(q, N):
    qb = bar_q(q)
    assert qb % 2 == 0 and qb < q and qb + 2 >= q
    p = N // 2
    pb = bar_p(N, p)
    assert pb % 2 == N % 2 and pb > p and pb - 2 <= p


def test_kb_sigma_values():
    assert kb_sigma(16, 8, 8) == pytest.approx(2 * math.pi)
    assert kb_sigma(64, 32, 16) == pytest.approx(4 * math.pi)
    assert kb_sigma(10_000, 9_999, 5) < 1e-3


def test_fat_rejected():
    with pytest.raises(ValueError, match="adjoint"):
        kb_trial(16, 4, 8)
    with pytest.raises(ValueError):
        gaussian_sigma(16, 4, 8)


def test_gaussian_worked_case():
    N, p, q = 32, 16, 8
    cert = gaussian_trial(N, p, q)
    s = singular_values(SubmatrixSpec.centered(N, p, q))
    assert s[-1] <= cert.ratio <= sigma_min_upper_bounds(N, p, q)["gaussian"]
    A = build_submatrix(cert.spec)
    assert cert.ratio == pytest.approx(np.linalg.norm(A @ cert.v) / np.linalg.norm(cert.v), rel=1e-14)


def test_kb_worked_case():
    N, p, q = 64, 32, 16
    cert = kb_trial(N, p, q)
    s = singular_values(SubmatrixSpec.centered(N, p, q))
    assert cert.ratio / s[-1] >= 1
    assert cert.ratio <= sigma_min_upper_bounds(N, p, q)["kb"]
    assert np.linalg.norm(cert.v) >= bessel_i0(cert.sigma_param) - 1


@given(tall_shapes())
def test_kb_certificate_sandwich(shape):
    N, p, q = shape
    cert = kb_trial(N, p, q)
    s = singular_values(cert.spec)
    slack = 1e-12 * s[0]
    assert s[-1] <= cert.ratio + slack
    ub = sigma_min_upper_bounds(N, p, q)["kb"]
    assert cert.ratio <= ub + slack


@given(tall_shapes())
def test_kb_embedding_exact(shape):
    assert kb_embedding_error(kb_trial(*shape)) <= 1e-12


@given(tall_shapes().filter(lambda s: 2 < s[2] and s[1] < s[0] - 2))
def test_gaussian_certificate_sandwich(shape):
    N, p, q = shape
    cert = gaussian_trial(N, p, q)
    s = singular_values(cert.spec)
    slack = 1e-12 * s[0]
    assert s[-1] <= cert.ratio + slack <= sigma_min_upper_bounds(N, p, q)["gaussian"] + 2 * slack


@given(tall_shapes(max_N=40), st.integers(-50, 50), st.integers(-50, 50))
def test_ratio_invariant_under_translation(shape, dr, dc):
    N, p, q = shape
    cert = kb_trial(N, p, q)
    moved = translate(cert.spec, dr, dc)
    # a row shift multiplies column k by exp(2 pi i dr k / N); undo it on v
    phase = np.exp(-2j * np.pi * dr * cert.spec.cols / N)
    v = cert.v * phase
    A = build_submatrix(moved)
    assert np.linalg.norm(A @ v) / np.linalg.norm(v) == pytest.approx(cert.ratio, rel=1e-9, abs=1e-12 * math.sqrt(N))
