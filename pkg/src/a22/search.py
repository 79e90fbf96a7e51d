"""Exhaustive search for points of the model with coordinates +-2^a.

A point of A_2(2) whose image has coordinates in Z[1/2] can be scaled to
primitive integer coordinates; all of them then share the same valuation at
every odd prime, so each is +-2^a (or 0).  Five coordinates are enumerated
over that alphabet and the other five recovered exactly from the linear
forms.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import e, exp, floor, log

import numpy as np

from . import variety
from .algebra import ExactMatrix, rref
from .errors import ConfigurationError
from .variety import LINEAR_ARRAY, LINEAR_FORMS, ProjectivePoint


def _block_invertible(cols) -> bool:
    return rref([[row[c - 1] for c in cols] for row in LINEAR_FORMS]).rank == 5


def valid_free_choices() -> list[tuple[int, ...]]:
    """5-subsets F such that the linear forms determine the complement from F."""
    return [F for F in itertools.combinations(range(1, 11), 5)
            if _block_invertible([c for c in range(1, 11) if c not in F])]


DEFAULT_FREE = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class SearchConfig:
    height_bound: float = 4.0
    alphabet: str = "pm2"
    allow_zero_coordinates: bool = False
    free_variables: tuple[int, ...] = DEFAULT_FREE

    def __post_init__(self):
        if self.alphabet not in ("pm2", "pm1"):
            raise ConfigurationError("alphabet must be 'pm2' or 'pm1'")
        if self.height_bound < 0:
            raise ConfigurationError("height bound must be nonnegative")
        object.__setattr__(self, "free_variables", tuple(sorted(self.free_variables)))

    @property
    def exponent_range(self) -> int:
        if self.alphabet == "pm1":
            return 0
        # +1e-12 keeps exact multiples of log 2 on the inclusive side
        return floor(self.height_bound / log(2) + 1e-12)

    def letters(self) -> list[int]:
        out = []
        for a in range(self.exponent_range + 1):
            out += [-(2**a), 2**a]
        if self.allow_zero_coordinates:
            out.append(0)
        return sorted(out)

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def candidate_form_reduction(cfg: SearchConfig = SearchConfig()) -> dict:
    """Record why the alphabet suffices, and what it is."""
    k = cfg.exponent_range
    record = {
        "claim": "primitive integer coordinates with equal valuation at every odd prime "
                 "are each 0 or +-2^a",
        "height_bound": cfg.height_bound,
        "exp_height_bound": exp(cfg.height_bound),
        "exponent_range": k,
        "largest_letter": 2**k,
        "next_power_exceeds_bound": 2 ** (k + 1) > exp(cfg.height_bound),
        "alphabet": cfg.letters(),
        "alphabet_size": len(cfg.letters()),
    }
    if cfg.height_bound > 4:
        record["ratio_to_height_4"] = exp(cfg.height_bound - 4)
        record["completeness"] = "comparative benchmark only; not complete for S = {inf, p}"
    return record


@dataclass
class SearchCertificate:
    config: dict
    config_hash: str
    free_variables: tuple[int, ...]
    alphabet: list[int]
    candidates: int = 0
    pruned_per_coordinate: dict = field(default_factory=dict)
    quartic_tested: int = 0
    quartic_passed: int = 0
    accepted: int = 0
    result_hash: str = ""
    wall_clock_seconds: float = 0.0

    def to_json(self) -> dict:
        d = asdict(self)
        d["pruned_per_coordinate"] = {str(k): v for k, v in self.pruned_per_coordinate.items()}
        return d


@dataclass
class SearchResult:
    points: list[ProjectivePoint]
    certificate: SearchCertificate


def _solver(free: tuple[int, ...]):
    """Integer matrix T and denominator den with den * x_solved = T @ x_free."""
    solved = [c for c in range(1, 11) if c not in free]
    # L_s x_s + L_f x_f = 0  =>  x_s = -L_s^{-1} L_f x_f
    aug = [[row[c - 1] for c in solved] + [-row[c - 1] for c in free] for row in LINEAR_FORMS]
    red = rref(aug)
    if red.pivots != (0, 1, 2, 3, 4):
        raise ConfigurationError(
            f"free variables {free} leave the linear system singular; "
            f"try {valid_free_choices()[0]}")
    sol = [[Fraction(x) for x in r[5:]] for r in red.reduced.rows]
    den = 1
    for r in sol:
        for x in r:
            den = den * x.denominator // np.gcd(den, x.denominator)
    T = np.array([[int(x * den) for x in r] for r in sol], dtype=np.int64)
    return solved, T, den


def run_search(cfg: SearchConfig = SearchConfig(), chunk: int = 1 << 16) -> SearchResult:
    start = time.perf_counter()
    free = cfg.free_variables
    solved, T, den = _solver(free)
    letters = np.array(cfg.letters(), dtype=np.int64)
    # |den * x| stays far below 2^62 for every supported alphabet
    assert np.abs(T).sum() * max(abs(letters)) * den < 2**40
    # (sum x^2)^2 <= 100 max|x|^4 must fit in int64 for the quartic test
    assert 100 * int(max(abs(letters))) ** 4 < 2**62
    cert = SearchCertificate(asdict(cfg), cfg.digest(), free, cfg.letters(),
                             pruned_per_coordinate={c: 0 for c in solved})
    found: set[ProjectivePoint] = set()
    allowed = set(letters.tolist())
    tuples = itertools.product(letters.tolist(), repeat=5)
    while True:
        block = np.array(list(itertools.islice(tuples, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        cert.candidates += len(block)
        scaled = block @ T.T
        alive = np.ones(len(block), dtype=bool)
        values = np.empty_like(scaled)
        for k, c in enumerate(solved):
            col = scaled[:, k]
            ok = (col % den == 0)
            v = col // den
            ok &= np.isin(v, letters)
            values[:, k] = v
            newly_dead = alive & ~ok
            cert.pruned_per_coordinate[c] += int(newly_dead.sum())
            alive &= ok
        if not alive.any():
            continue
        full = np.zeros((int(alive.sum()), 10), dtype=np.int64)
        full[:, [c - 1 for c in free]] = block[alive]
        full[:, [c - 1 for c in solved]] = values[alive]
        full = full[full.any(axis=1)]
        cert.quartic_tested += len(full)
        hits = full[variety.quartic_array(full) == 0]
        cert.quartic_passed += len(hits)
        for row in hits:
            pt = ProjectivePoint(tuple(int(x) for x in row))
            # exact re-verification in arbitrary precision
            assert variety.is_on_variety(pt)
            assert set(row.tolist()) <= allowed
            found.add(pt)
    points = sorted(found)
    cert.accepted = len(points)
    cert.result_hash = hashlib.sha256(json.dumps([p.coords for p in points]).encode()).hexdigest()
    cert.wall_clock_seconds = time.perf_counter() - start
    return SearchResult(points, cert)


def search_certificate(cfg: SearchConfig = SearchConfig()) -> dict:
    return run_search(cfg).certificate.to_json()
