"""Seeded sampling certificates built on the theta module.

Each suite draws its own reproducible stream from ``(seed, suite name)`` so
running one suite alone gives the same numbers as running it inside ``all``.
"""
from __future__ import annotations

import time
import zlib

import numpy as np

from . import characteristics as ch
from . import runge
from . import theta as th
from .errors import DegeneratePointError

SUITES = ("equations", "modularity", "splitting", "rosenhain", "smallsets")
EQUATION_THRESHOLD = 1e-9
SPLITTING_THRESHOLD = 1e-9
ROSENHAIN_THRESHOLD = 1e-8
MODULARITY_SAMPLES = 20
# relative uncertainty attached to a double-precision |x_m| for the exact-threshold tests
MAGNITUDE_REL_ERR = 1e-10


def _rng(seed: int, suite: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(suite.encode())])


def equations(samples: int, seed: int, tol: float) -> dict:
    rng = _rng(seed, "equations")
    worst = 0.0
    for _ in range(samples):
        psi = th.psi_numeric(th.random_tau(rng), tol)
        worst = max(worst, float(np.abs(psi.residuals).max()))
    return {"samples": samples, "max_residual": worst, "threshold": EQUATION_THRESHOLD,
            "passes": worst < EQUATION_THRESHOLD}


def modularity(samples: int, seed: int, tol: float) -> dict:
    rng = _rng(seed, "modularity")
    n = min(samples, MODULARITY_SAMPLES)
    spreads, signs, passed = [], [], 0
    for _ in range(n):
        M = th.random_sp4z(rng)
        rep = th.verify_modularity(M, th.random_tau(rng), tol)
        spreads.append(rep.spread)
        signs.append(rep.constant_sign)
        passed += rep.passes
    return {"samples": n, "passed": passed, "max_spread": max(spreads, default=0.0),
            "constant_signs": sorted({s for s in signs if s is not None}),
            "passes": passed == n}


def splitting(samples: int, seed: int, tol: float) -> dict:
    rng = _rng(seed, "splitting")
    worst = 0.0
    for _ in range(samples):
        t1, t2 = rng.uniform(-1, 1, 2) + 1j * rng.uniform(0.5, 2.0, 2)
        worst = max(worst, th.splitting_error(t1, t2, tol))
    return {"samples": samples, "max_error": worst, "threshold": SPLITTING_THRESHOLD,
            "passes": worst < SPLITTING_THRESHOLD}


def rosenhain(samples: int, seed: int, tol: float) -> dict:
    rng = _rng(seed, "rosenhain")
    worst, min_sep, degenerate = 0.0, float("inf"), 0
    for _ in range(samples):
        tau = th.random_tau(rng)
        thetas = [v.value for v in th.theta_constants(tau, tol)]
        try:
            res = th.rosenhain(thetas)
        except DegeneratePointError:
            degenerate += 1
            continue
        a, b = res.lambdas[0] ** 2, res.lambda1_rational**2
        worst = max(worst, abs(a - b) / abs(a))
        min_sep = max(0.0, min(min_sep, th.weierstrass_separation(res)))
    return {"samples": samples, "degenerate": degenerate, "max_relative_disagreement": worst,
            "min_weierstrass_separation": min_sep, "threshold": ROSENHAIN_THRESHOLD,
            "passes": degenerate == 0 and worst < ROSENHAIN_THRESHOLD and min_sep > 0}


def _sample_magnitudes(rng: np.random.Generator, tol: float) -> np.ndarray:
    return np.abs(th.psi_numeric(th.random_tau(rng), tol).coords)


def smallsets(samples: int, seed: int, tol: float) -> dict:
    """Small-set verdict (threshold 1/27) and Göpel floor (51/1000) at the
    archimedean place for every sampled point."""
    rng = _rng(seed, "smallsets")
    place = runge.PlaceDescriptor.infinite()
    quads = [ch.indices(q) for q in ch.goepel_quadruples()]
    verdict_fail, floor_fail, sizes = 0, 0, {}
    for _ in range(samples):
        mags = _sample_magnitudes(rng, tol)
        rep = runge.small_coordinate_set(mags, place, MAGNITUDE_REL_ERR)
        sizes[len(rep.indices)] = sizes.get(len(rep.indices), 0) + 1
        verdict_fail += not rep.verdict
        floor_fail += not all(runge.goepel_floor_check(mags, q, place, MAGNITUDE_REL_ERR) for q in quads)
    return {"samples": samples, "verdict_failures": verdict_fail, "floor_failures": floor_fail,
            "small_set_sizes": {str(k): v for k, v in sorted(sizes.items())},
            "passes": verdict_fail == 0 and floor_fail == 0}


_RUNNERS = {"equations": equations, "modularity": modularity, "splitting": splitting,
            "rosenhain": rosenhain, "smallsets": smallsets}


def verify(suite: str = "all", samples: int = 100, seed: int = 0, tol: float = th.TOL_FLOOR) -> dict:
    if tol < th.TOL_FLOOR:
        raise ValueError(f"tol below the double-precision floor {th.TOL_FLOOR}")
    names = SUITES if suite == "all" else (suite,)
    if any(n not in _RUNNERS for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    out = {"seed": seed, "tol": tol, "suites": {}}
    t0 = time.perf_counter()
    for n in names:
        s = time.perf_counter()
        out["suites"][n] = _RUNNERS[n](samples, seed, tol)
        out["suites"][n]["seconds"] = round(time.perf_counter() - s, 3)
    out["seconds"] = round(time.perf_counter() - t0, 3)
    out["passes"] = all(r["passes"] for r in out["suites"].values())
    return out


def runge_sample(count: int, seed: int, tol: float = th.TOL_FLOOR) -> dict:
    """Sampling certificate for the small-set and Göpel-floor conclusions."""
    return smallsets(count, seed, tol)
