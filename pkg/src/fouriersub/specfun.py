"""Special functions used throughout the package.

Everything here is written from scratch on top of numpy so that the accuracy
of each routine is under our control: sinc with a small-argument Taylor
branch, the warped sinc and its sinh continuation, I0 (series + asymptotic),
integer-order J_n by Miller's backward recurrence, Chebyshev T_n, and the two
small auxiliary functions R(x) and Siegel's g(z).
"""

import math

import numpy as np

__all__ = [
    "sinc",
    "warped_sinc",
    "bessel_i0",
    "log_bessel_i0",
    "bessel_jn",
    "bessel_jn_all",
    "chebyshev_t",
    "warp_deviation",
    "siegel_g",
]

_I0_SERIES_MAX = 15.0
_I0_OVERFLOW = 700.0


def _scalar_or_array(out, was_scalar):
    return float(out) if was_scalar else out


def sinc(x):
    """Unnormalized sinc, sin(x)/x with sinc(0) = 1. Accepts scalars or arrays."""
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    out = np.empty_like(x_arr)
    small = np.abs(x_arr) < 1e-2
    xs = x_arr[small]
    x2 = xs * xs
    # degree-7 Taylor polynomial; next term is x^8/362880 < 3e-22
    out[small] = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    xl = x_arr[~small]
    out[~small] = np.sin(xl) / xl
    return _scalar_or_array(out[0] if scalar else out, scalar)


def _sinhc(s):
    # sinh(s)/s for s >= 0
    out = np.empty_like(s)
    small = s < 1e-2
    s2 = s[small] ** 2
    out[small] = 1.0 + s2 / 6.0 * (1.0 + s2 / 20.0 * (1.0 + s2 / 42.0))
    sl = s[~small]
    out[~small] = np.sinh(sl) / sl
    return out


def warped_sinc(x, sigma):
    """sinc(sqrt(x^2 - sigma^2)), continued analytically below the cutoff.

    For |x| < sigma the square root is imaginary and the value becomes
    sinh(s)/s with s = sqrt(sigma^2 - x^2). The function is even in x.
    """
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    x_arr = np.atleast_1d(np.abs(np.asarray(x, dtype=float)))
    scalar = np.ndim(x) == 0
    out = np.empty_like(x_arr)
    above = x_arr >= sigma
    xa = x_arr[above]
    # (x - s)(x + s) keeps precision when x is close to sigma
    out[above] = sinc(np.sqrt((xa - sigma) * (xa + sigma)))
    xb = x_arr[~above]
    out[~above] = _sinhc(np.sqrt((sigma - xb) * (sigma + xb)))
    return _scalar_or_array(out[0] if scalar else out, scalar)


def _i0_series(x):
    # all terms positive, so summing to convergence is accurate to a few ulps
    y = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    k = 0
    while True:
        k += 1
        term = term * y / (k * k)
        total = total + term
        if np.all(term <= 1e-17 * total):
            return total


def _i0_asymptotic_factor(x):
    # I0(x) = e^x / sqrt(2 pi x) * sum_k prod_{j<=k} (2j-1)^2 / (k! (8x)^k)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 40):
        ratio = (2 * k - 1) ** 2 / (8.0 * k * x)
        if np.all(ratio >= 1.0):
            break
        term = term * np.where(ratio < 1.0, ratio, 0.0)
        total = total + term
        if np.all(term <= 1e-17 * total):
            break
    return total


def bessel_i0(x):
    """Modified Bessel function I0 for 0 <= x <= 700.

    Power series up to x = 15, large-argument asymptotic expansion beyond.
    Raises OverflowError above 700, where I0 approaches the double range.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.ndim(x) == 0
    if np.any(x_arr < 0):
        raise ValueError("bessel_i0 requires x >= 0")
    if np.any(x_arr > _I0_OVERFLOW):
        raise OverflowError(f"bessel_i0 argument exceeds {_I0_OVERFLOW}")
    out = np.empty_like(x_arr)
    lo = x_arr <= _I0_SERIES_MAX
    if np.any(lo):
        out[lo] = _i0_series(x_arr[lo])
    hi = ~lo
    if np.any(hi):
        xh = x_arr[hi]
        out[hi] = np.exp(xh) / np.sqrt(2 * np.pi * xh) * _i0_asymptotic_factor(xh)
    return _scalar_or_array(out[0] if scalar else out, scalar)


def log_bessel_i0(x):
    """Natural log of I0(x), valid for arbitrarily large x >= 0."""
    if x < 0:
        raise ValueError("log_bessel_i0 requires x >= 0")
    if x <= _I0_SERIES_MAX:
        return math.log(bessel_i0(x))
    fac = float(_i0_asymptotic_factor(np.array([float(x)]))[0])
    return x - 0.5 * math.log(2 * math.pi * x) + math.log(fac)


def _miller_start(nmax, ax):
    big = max(nmax, ax)
    start = int(big + 20 + 10 * big ** (1.0 / 3.0))
    return start + (start % 2)


def bessel_jn_all(nmax, x):
    """Return the array [J_0(x), ..., J_nmax(x)] by Miller's algorithm.

    Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1} from a start index well
    beyond max(nmax, |x|), normalized by J_0 + 2 sum_k J_{2k} = 1.
    """
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    out = np.zeros(nmax + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    ax = abs(float(x))
    start = _miller_start(nmax, ax)
    vals = np.zeros(start + 2)
    j_next, j_cur = 0.0, 1e-300
    vals[start] = j_cur
    for k in range(start, 0, -1):
        j_prev = (2.0 * k / ax) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        vals[k - 1] = j_cur
        if abs(j_cur) > 1e250:
            vals[k - 1 :] *= 1e-250
            j_next *= 1e-250
            j_cur *= 1e-250
    norm = vals[0] + 2.0 * math.fsum(vals[2 : start + 1 : 2])
    out[:] = vals[: nmax + 1] / norm
    if x < 0:
        out[1::2] = -out[1::2]
    return out


def bessel_jn(n, x):
    """Bessel function of the first kind J_n(x), integer n >= 0."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    return float(bessel_jn_all(n, x)[n])


def chebyshev_t(n, t):
    """Chebyshev polynomial T_n(t) = cos(n arccos t) for |t| <= 1."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(np.abs(t_arr) > 1.0):
        raise ValueError("chebyshev_t requires |t| <= 1")
    out = np.cos(n * np.arccos(t_arr))
    return float(out) if out.ndim == 0 else out


def warp_deviation(x, sigma):
    """R(x) = x - sqrt(x^2 - sigma^2) for x >= sigma, in cancellation-free form."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < sigma):
        raise ValueError("warp_deviation requires x >= sigma")
    root = np.sqrt((x_arr - sigma) * (x_arr + sigma))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(x_arr + root > 0, sigma * sigma / (x_arr + root), 0.0)
    return float(out) if out.ndim == 0 else out


def siegel_g(z):
    """g(z) = z exp(sqrt(1-z^2)) / (1 + sqrt(1-z^2)) on 0 < z <= 1.

    Siegel's bound gives |J_n(nz)| <= g(z)^n on this interval.
    """
    z_arr = np.asarray(z, dtype=float)
    if np.any((z_arr <= 0) | (z_arr > 1)):
        raise ValueError("siegel_g requires 0 < z <= 1")
    s = np.sqrt((1 - z_arr) * (1 + z_arr))
    out = z_arr * np.exp(s) / (1 + s)
    return float(out) if out.ndim == 0 else out
