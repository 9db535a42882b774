import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fouriersub.core import (
    COND_CAP,
    SubmatrixSpec,
    adjoint,
    build_submatrix,
    complement,
    singular_spectrum,
    singular_values,
    translate,
)


@st.composite
def specs(draw, max_N=24):
    N = draw(st.integers(2, max_N))
    p = draw(st.integers(1, N))
    q = draw(st.integers(1, N))
    r = draw(st.integers(-2 * N, 2 * N))
    c = draw(st.integers(-2 * N, 2 * N))
    return SubmatrixSpec(N, p, q, r, c)


def test_small_entries():
    A = build_submatrix(SubmatrixSpec(4, 2, 2, 0, 0))
    np.testing.assert_allclose(A, [[1, 1], [1, 1j]], atol=1e-15)
    col = build_submatrix(SubmatrixSpec(4, 3, 1, 1, 0))
    np.testing.assert_allclose(col, np.ones((3, 1)), atol=1e-15)


def test_centered_index_sets():
    s = SubmatrixSpec.centered(10, 3, 4)
    # rows: the 3 frequencies of largest magnitude, a run through N/2
    wrapped = lambda r, N: sorted((int(x) + N // 2) % N - N // 2 for x in r)  # noqa: E731
    assert wrapped(s.rows, 10) == [-5, -4, 4]
    assert list(s.cols) == [-2, -1, 0, 1]
    s = SubmatrixSpec.centered(9, 4, 3)
    assert wrapped(s.rows, 9) == [-4, -3, 3, 4]
    assert list(s.cols) == [-1, 0, 1]


def test_entries_reduced_mod_N_before_exponentiation():
    N = 100_003
    s = SubmatrixSpec(N, 2, 2, N // 2 - 1, N // 2 - 1)
    A = build_submatrix(s)
    mp.mp.dps = 40
    for i, j in enumerate(s.rows):
        for k, m in enumerate(s.cols):
            ref = complex(mp.exp(2j * mp.pi * int(j) * int(m) / N))
            assert abs(A[i, k] - ref) < 1e-14


@given(specs())
def test_unit_modulus(spec):
    assert np.allclose(np.abs(build_submatrix(spec)), 1.0, atol=1e-14)


@pytest.mark.parametrize("N", [4, 8, 16, 64])
def test_full_matrix_scaled_unitary(N):
    F = build_submatrix(SubmatrixSpec(N, N, N)) / math.sqrt(N)
    np.testing.assert_allclose(F.conj().T @ F, np.eye(N), atol=1e-12)


def test_full_matrix_spectrum():
    sp = singular_spectrum(SubmatrixSpec(8, 8, 8))
    np.testing.assert_allclose(sp.values, math.sqrt(8), rtol=1e-14)
    assert sp.cond == pytest.approx(1.0, abs=1e-14)


def test_two_by_two_oracle():
    sp = singular_spectrum(SubmatrixSpec(4, 2, 2, 0, 0))
    np.testing.assert_allclose(sp.values, [math.sqrt(2 + math.sqrt(2)), math.sqrt(2 - math.sqrt(2))], rtol=1e-14)
    assert sp.cond == pytest.approx(1 + math.sqrt(2), rel=1e-14)


def test_overflow_reported():
    sp = singular_spectrum(SubmatrixSpec.centered(100, 50, 49))
    assert sp.overflow and math.isinf(sp.cond)
    assert sp.sigma_min <= sp.sigma1 / COND_CAP


def test_translate_examples():
    s = SubmatrixSpec(8, 3, 3)
    assert translate(s, 0, 0) == s
    assert translate(s, 8, 8) == s
    np.testing.assert_allclose(singular_values(translate(s, 2, 5)), singular_values(s), rtol=1e-13)


def test_translation_invariance_exhaustive():
    # every shift of every (p, q) for N <= 16, batched per shape
    for N in range(2, 17):
        for p in range(1, N + 1):
            for q in range(1, N + 1):
                stack = np.array([build_submatrix(SubmatrixSpec(N, p, q, r, c))
                                  for r in range(N) for c in range(N)])
                s = np.linalg.svd(stack, compute_uv=False)
                assert np.max(np.abs(s - s[0])) <= 1e-12 * s[0, 0]


def test_sigma1_at_least_sqrt_p_exhaustive():
    for N in range(1, 17):
        for p in range(1, N + 1):
            for q in range(1, N + 1):
                s = singular_values(SubmatrixSpec.centered(N, p, q))
                assert s[0] >= math.sqrt(max(p, q)) * (1 - 1e-13)


def test_adjoint():
    s = SubmatrixSpec.centered(16, 8, 4)
    a = adjoint(s)
    assert (a.p, a.q) == (4, 8)
    assert adjoint(a) == s
    np.testing.assert_allclose(singular_values(a), singular_values(s), rtol=1e-13)
    np.testing.assert_allclose(build_submatrix(a), build_submatrix(s).T, atol=1e-15)


@given(specs())
def test_cond_adjoint_invariant(spec):
    a, b = singular_spectrum(spec), singular_spectrum(adjoint(spec))
    if not a.overflow:
        assert b.cond == pytest.approx(a.cond, rel=1e-10)


def test_complement_small():
    D, C = complement(SubmatrixSpec(4, 1, 1, 0, 0))
    assert (D.p, D.q) == (3, 3) and list(D.rows) == [1, 2, 3] and list(D.cols) == [1, 2, 3]
    assert (C.p, C.q) == (3, 1) and list(C.cols) == [0]
    D, C = complement(SubmatrixSpec(8, 3, 2))
    assert (D.p, D.q) == (5, 6)
    assert (C.p, C.q) == (5, 2)


@given(specs())
def test_complement_partitions(spec):
    if spec.p == spec.N or spec.q == spec.N:
        with pytest.raises(ValueError):
            complement(spec)
        return
    D, C = complement(spec)
    N = spec.N
    rows = set(np.mod(spec.rows, N)) | set(np.mod(D.rows, N))
    cols = set(np.mod(spec.cols, N)) | set(np.mod(D.cols, N))
    assert rows == cols == set(range(N))
    assert set(np.mod(C.rows, N)) == set(np.mod(D.rows, N))
    assert list(C.cols) == list(spec.cols)


@pytest.mark.parametrize("N", [4, 8, 16, 32])
def test_leave_one_out_equality(N):
    sp = singular_spectrum(SubmatrixSpec(N, N - 1, N - 1, 1, 1))
    assert sp.sigma1 == pytest.approx(math.sqrt(N), rel=1e-12)
    assert sp.cond == pytest.approx(math.sqrt(N), rel=1e-12)


@given(specs(max_N=40).filter(lambda s: min(s.p, s.q) <= 6))
def test_gram_oracle(spec):
    A = build_submatrix(spec)
    small = A.conj().T @ A if spec.q <= spec.p else A @ A.conj().T
    ev = np.sqrt(np.clip(np.sort(np.linalg.eigvalsh(small))[::-1], 0, None))
    s = singular_values(spec)
    # the Gram route squares cond; compare where it still has 9 digits
    top = ev > 1e-3 * ev[0]
    np.testing.assert_allclose(s[top], ev[top], rtol=1e-9)


def test_spec_validation():
    with pytest.raises(ValueError):
        SubmatrixSpec(4, 5, 1)
    with pytest.raises(ValueError):
        SubmatrixSpec(4, 0, 1)
