import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fouriersub.sincsums import (
    LemmaCheck,
    SincSumParams,
    lemma_grid,
    lemma_report_csv,
    sinc_sum,
    verify_lemma_bounds,
    warp_tail_bound,
)
from fouriersub.sincsums import _sin_r_sum
from fouriersub.specfun import warped_sinc, sinc


def summand(a, sigma, b, m):
    x = a * m + b
    return warped_sinc(x, sigma) - sinc(x)


def test_params_validated():
    with pytest.raises(ValueError):
        SincSumParams(1.0, 0.1, 1.0)
    with pytest.raises(ValueError):
        SincSumParams(math.pi, 2.0, 3.0)
    with pytest.raises(ValueError):
        SincSumParams(math.pi, 1.0, 0.5)


def test_reference_value_against_brute_force():
    val, tail = sinc_sum(SincSumParams(math.pi, 1.0, 2.0), tol=1e-8)
    assert tail <= 1e-8
    # independent brute force: 2e6 terms, remainder bounded by the same envelope
    M = 2_000_000
    m = np.arange(M, dtype=float)
    brute = math.fsum(summand(math.pi, 1.0, 2.0, m))
    rem = warp_tail_bound(math.pi, 2.0, 1.0, M)
    assert abs(val - brute) <= tail + rem + 1e-12
    assert val == pytest.approx(0.10705210183, abs=2e-8)


def test_vanishing_sigma():
    val, tail = sinc_sum(SincSumParams(math.pi, 1e-6, 1.0), tol=1e-9)
    assert abs(val) <= 1e-9 + tail


def test_tolerance_independence():
    p = SincSumParams(3 * math.pi, 2.5, 4.0)
    v6, _ = sinc_sum(p, tol=1e-6)
    v9, _ = sinc_sum(p, tol=1e-9)
    assert abs(v6 - v9) <= 2e-6


@pytest.mark.parametrize("a,sigma,b", [(math.pi, 1.0, 2.0), (10.0, 4.0, 7.0), (300.0, 140.0, 150.0)])
def test_summand_decays_quadratically(a, sigma, b):
    m = np.logspace(3, 6, 400)
    scaled = np.abs(summand(a, sigma, b, m)) * m**2
    assert np.max(scaled) <= 2 * sigma**2 / a**2 + 2 * sigma**2 / a**2 * (sigma**2 / a + 1)


@settings(max_examples=20)
@given(st.floats(math.pi, 50), st.floats(0.02, 0.48), st.floats(0.05, 3))
def test_tail_bound_is_rigorous(a, sfrac, bfac):
    sigma = a * sfrac
    b = sigma + bfac * a
    M = 50
    exact_tail = math.fsum(summand(a, sigma, b, np.arange(M, M + 200_000, dtype=float)))
    assert abs(exact_tail) <= warp_tail_bound(a, b, sigma, M) + 1e-12


def test_sin_r_worked_case():
    s, t = _sin_r_sum(math.pi, math.pi / 2, math.pi / 2 - 0.01, 1e-7)
    assert s + t <= 2


def test_lemma_suite_grid():
    pts = lemma_grid()
    assert len(pts) >= 100
    checks = verify_lemma_bounds(pts)
    assert all(c.ok for c in checks)
    sincwarp = [c.ratio for c in checks if c.lemma_id == "sincwarp"]
    assert max(sincwarp) < 1  # not tight
    assert {c.lemma_id for c in checks} == {"sincwarp", "sinwarp", "sinR", "cosR1", "denomwarp", "Rbnd"}


def test_report_csv():
    txt = lemma_report_csv([LemmaCheck(1.0, 0.2, 0.7, "sinR", 0.5, 2.0)])
    lines = txt.strip().splitlines()
    assert lines[0] == "a,sigma,b,lemma_id,observed,bound,ratio"
    assert lines[1].endswith(",0.25")
