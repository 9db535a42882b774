"""Invariant suites behind ``fouriersub verify``.

Each suite is a list of zero-argument callables returning :class:`Check`.
The acceptance tests call the same functions, so the CLI and the test
suite agree on what "passing" means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import alpha_star, bound_report, rates, sigma_min_upper_bounds
from .core import SubmatrixSpec, singular_spectrum, singular_values
from .kernels import (
    GaussianKernel,
    KaiserBesselKernel,
    centered_indices,
    dense_dft,
    dkb_dft_formula,
    gaussian_periodized_dft,
    gaussian_periodized_sample,
    kb_position,
    verify_jpair,
    verify_pair_quadrature,
)
from .sincsums import lemma_grid, verify_lemma_bounds
from .symmetry import condrat_check
from .trials import gaussian_sigma, gaussian_trial, kb_sigma, kb_trial

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


# -- core ---------------------------------------------------------------------


def check_unitarity(Ns=(4, 8, 16, 64), rtol=1e-12) -> Check:
    worst = 0.0
    for N in Ns:
        s = singular_values(SubmatrixSpec(N, N, N))
        worst = max(worst, float(np.max(np.abs(s / math.sqrt(N) - 1))))
    return Check("core.unitarity", worst <= rtol, f"max rel dev {worst:.2e}")


def check_two_by_two(tol=1e-12) -> Check:
    # rows {1, 2}, cols {-1, 0} of the 4-point DFT: [[-i, 1], [-1, 1]], cond 1 + sqrt(2)
    c = singular_spectrum(SubmatrixSpec.centered(4, 2, 2)).cond
    return Check("core.2x2_oracle", abs(c - (1 + math.sqrt(2))) <= tol, f"cond {c:.15f}")


def check_translation_invariance(seed=0, trials=50, rtol=1e-10) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        N = int(rng.integers(3, 40))
        p, q = (int(x) for x in rng.integers(1, N + 1, size=2))
        r, c = (int(x) for x in rng.integers(-N, N, size=2))
        a = singular_values(SubmatrixSpec(N, p, q))
        b = singular_values(SubmatrixSpec(N, p, q, r, c))
        worst = max(worst, float(np.max(np.abs(a - b)) / a[0]))
    return Check("core.translation_invariance", worst <= rtol, f"max rel dev {worst:.2e}")


# -- bounds -------------------------------------------------------------------


def check_dominance(max_N=32, rtol=1e-9) -> Check:
    """Every lower bound <= computed cond over all centered submatrices."""
    violations, cells, skipped = [], 0, 0
    for N in range(2, max_N + 1):
        for p in range(1, N + 1):
            for q in range(1, N + 1):
                rep = bound_report(N, p, q)
                if rep.overflow:
                    skipped += 1
                    continue
                cells += 1
                for name, lb in rep.lower_bounds.items():
                    if lb > rep.cond_computed * (1 + rtol):
                        violations.append((N, p, q, name))
    detail = f"{cells} cells, {skipped} overflow skipped, {len(violations)} violations"
    if violations:
        detail += f", first {violations[:3]}"
    return Check(f"bounds.dominance_N<={max_N}", not violations, detail)


def check_trial_certificates(Ns=(16, 32, 64), slack=1e-12) -> Check:
    """sigma_min <= trial ratio <= theorem RHS, for KB everywhere and Gaussian where defined."""
    fails, n = [], 0
    for N in Ns:
        for p in range(1, N):
            for q in range(1, p + 1):
                s = singular_values(SubmatrixSpec.centered(N, p, q))
                tol = slack * s[0]
                ubs = sigma_min_upper_bounds(N, p, q)
                cert = kb_trial(N, p, q)
                n += 1
                if not s[-1] - tol <= cert.ratio:
                    fails.append(("kb-low", N, p, q))
                if ubs["kb"] is not None and not cert.ratio <= ubs["kb"] + tol:
                    fails.append(("kb-high", N, p, q))
                if ubs["gaussian"] is not None:
                    try:
                        gaussian_sigma(N, p, q)
                    except ValueError:
                        continue
                    g = gaussian_trial(N, p, q)
                    n += 1
                    if not (s[-1] - tol <= g.ratio <= ubs["gaussian"] + tol):
                        fails.append(("gaussian", N, p, q))
    return Check("bounds.trial_certificates", not fails,
                 f"{n} certificates, {len(fails)} failures" + (f", first {fails[:3]}" if fails else ""))


def check_alpha_star() -> Check:
    a = alpha_star()
    return Check("bounds.alpha_star", 0.116 <= a <= 0.118, f"{a:.12f}")


def check_rate_doubling(n=100, rtol=1e-14) -> Check:
    worst = 0.0
    for a in np.linspace(0.005, 0.995, n):
        for b in np.linspace(0.005, 0.995, n):
            r = rates(float(a), float(b))
            worst = max(worst, abs(r.rho_kb - 2 * r.rho_gaussian))
    return Check("bounds.kb_rate_is_double_gaussian", worst <= rtol, f"max abs dev {worst:.1e}")


# -- kernels ------------------------------------------------------------------


def check_gaussian_dft(N=64, p=32, q=16, tol=1e-8) -> Check:
    g = GaussianKernel(gaussian_sigma(N, p, q), N)
    idx = centered_indices(N)
    f = np.array([gaussian_periodized_sample(g, int(j)) for j in idx])
    dense = dense_dft(f)
    formula = np.array([gaussian_periodized_dft(g, int(k)) for k in idx])
    err = float(np.max(np.abs(dense - formula)) / np.max(np.abs(formula)))
    return Check("kernels.gaussian_dft_formula", err <= tol, f"rel-to-peak err {err:.2e}")


def check_dkb_dft(N=64, p=32, q=16, tol=1e-8) -> Check:
    k = KaiserBesselKernel(kb_sigma(N, p, q), q)
    idx = centered_indices(N)
    dense = dense_dft(kb_position(k, idx.astype(float)))
    vals = [dkb_dft_formula(k, int(m), N) for m in idx]
    formula = np.array([v for v, _ in vals])
    err = float(np.max(np.abs(dense - formula)) / np.max(np.abs(formula)))
    return Check("kernels.dkb_dft_formula", err <= tol, f"rel-to-peak err {err:.2e}")


def check_pair_quadrature(tol=1e-8) -> Check:
    errs = {}
    grid = np.concatenate([np.linspace(0, 3, 31), [0.49, 0.5, 0.51]])
    errs["gaussian"] = max(verify_pair_quadrature("gaussian", s, grid) for s in (0.5, 1.0, 3.0))
    # plain KB: cutoff omega = sigma / (2 pi); grids straddle it
    errs["kb"] = max(verify_pair_quadrature("kb", s, np.linspace(0, 3 * s / (2 * math.pi), 25))
                     for s in (1.0, 5.0, 25.0))
    errs["dkb"] = max(verify_pair_quadrature("dkb", s, np.linspace(0, 3 * s / (math.pi * 8), 25), q=8)
                      for s in (1.0, 5.0, 25.0))
    worst = max(errs.values())
    return Check("kernels.pair_quadrature", worst <= tol,
                 ", ".join(f"{k} {v:.1e}" for k, v in errs.items()))


def check_jpair(tol=1e-8) -> Check:
    worst = max(verify_jpair(b, k) for b in (0.0, 1.0, 5.0, 25.0) for k in (0.0, 1.0, 5.0, 25.0))
    return Check("kernels.jpair", worst <= tol, f"max err {worst:.1e}")


# -- sinc sums ----------------------------------------------------------------


def check_sinc_lemmas() -> Check:
    checks = verify_lemma_bounds(lemma_grid())
    bad = [c for c in checks if not c.ok]
    pts = len({(c.a, c.sigma, c.b) for c in checks})
    return Check("sinc.lemma_bounds", not bad,
                 f"{len(checks)} evaluations on {pts} grid points, {len(bad)} violations")


# -- symmetry -----------------------------------------------------------------


def check_worked_complement(tol=1e-12) -> Check:
    rep = condrat_check(SubmatrixSpec.centered(4, 1, 1))
    ok = abs(rep.cond_D - 2) <= tol and abs(rep.lhs - rep.rhs) <= tol
    return Check("symmetry.worked_N4", ok, f"cond(D) {rep.cond_D:.15f}, ratio {rep.lhs:.15f}")


def random_condrat_specs(n=200, max_N=24, seed=1):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        N = int(rng.integers(3, max_N + 1))
        p = int(rng.integers(1, N - 1))
        q = int(rng.integers(1, N - p))
        r, c = (int(x) for x in rng.integers(0, N, size=2))
        out.append(SubmatrixSpec(N, p, q, r, c))
    return out


def check_condrat(n=200, rtol=1e-9, id_tol=1e-10) -> Check:
    worst_rel, worst_id, measured = 0.0, 0.0, 0
    for spec in random_condrat_specs(n):
        rep = condrat_check(spec)
        worst_id = max(worst_id, rep.identity_residual / spec.N)
        if rep.measurable:
            measured += 1
            worst_rel = max(worst_rel, abs(rep.lhs - rep.rhs) / rep.rhs)
    ok = worst_rel <= rtol and worst_id <= id_tol
    return Check("symmetry.condrat_random", ok,
                 f"{measured}/{n} measurable, max rel residual {worst_rel:.1e}, "
                 f"max identity residual/N {worst_id:.1e}")


SUITES = {
    "core": [check_unitarity, check_two_by_two, check_translation_invariance],
    "kernels": [check_gaussian_dft, check_dkb_dft, check_pair_quadrature, check_jpair],
    "sinc": [check_sinc_lemmas],
    "symmetry": [check_worked_complement, check_condrat],
    "bounds": [check_alpha_star, check_rate_doubling,
               check_dominance, check_trial_certificates],
}


def run_suite(name: str):
    """Yield Check results for one suite, or for every suite when name == "all"."""
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        for fn in SUITES[n]:
            yield fn()
