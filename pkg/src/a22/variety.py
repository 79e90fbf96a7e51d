"""The model of A_2(2)^S in P^9: five linear forms and one quartic.

Points are stored canonically: over Q as coprime integers whose first
nonzero entry is positive, over F_p as residues in ``[0, p)`` whose first
nonzero entry is 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import characteristics as ch
from . import symplectic as sp
from .algebra import ExactMatrix, rref
from .errors import ConfigurationError, PreconditionError

# Rows follow the five displayed linear equations, columns are x_1..x_10.
LINEAR_FORMS: tuple[tuple[int, ...], ...] = (
    (0, 0, 0, 0, 0, 0, 1, -1, -1, 1),   # x1000 - x1100 + x1111 - x1001
    (1, -1, 0, 0, 0, -1, 0, 0, -1, 0),  # x0000 - x0001 - x0110 - x1100
    (0, 0, -1, 1, 0, 1, 0, 0, 0, -1),   # x0110 - x0010 - x1111 + x0011
    (-1, 0, 0, 1, 1, 0, 0, 1, 0, 0),    # x0100 - x0000 + x1001 + x0011
    (0, 1, -1, 0, 1, 0, -1, 0, 0, 0),   # x0100 - x1000 + x0001 - x0010
)
LINEAR_ARRAY = np.array(LINEAR_FORMS, dtype=np.int64)

SUPPORTED_PRIMES = (2, 3, 5, 7)


def quartic(x: Sequence):
    s2 = sum(v * v for v in x)
    return s2 * s2 - 4 * sum(v ** 4 for v in x)


def quartic_array(x: np.ndarray) -> np.ndarray:
    s2 = (x * x).sum(axis=-1)
    return s2 * s2 - 4 * (x ** 4).sum(axis=-1)


def parse_domain(domain: str | int | None) -> int | None:
    """``"q"``/``None`` -> None; ``"f5"``/``5`` -> 5."""
    if domain is None or domain == "q" or domain == "Q":
        return None
    p = int(domain[1:]) if isinstance(domain, str) and domain[:1] in "fF" else int(domain)
    if p not in SUPPORTED_PRIMES:
        raise ConfigurationError(f"p={p} unsupported; choose one of {SUPPORTED_PRIMES}")
    return p


def domain_name(p: int | None) -> str:
    return "q" if p is None else f"f{p}"


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    coords: tuple[int, ...]
    p: int | None = None

    def __post_init__(self):
        if len(self.coords) != 10:
            raise PreconditionError("a point of P^9 has 10 coordinates")
        object.__setattr__(self, "coords", _canonical(self.coords, self.p))

    @classmethod
    def of(cls, coords: Sequence, p: int | None = None) -> "ProjectivePoint":
        return cls(tuple(coords), p)

    def __getitem__(self, i: int) -> int:
        """1-based coordinate access."""
        return self.coords[i - 1]

    @property
    def zero_set(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, x in enumerate(self.coords) if x == 0)

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "zero_set": list(self.zero_set)}

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"


def _canonical(coords: Sequence, p: int | None) -> tuple[int, ...]:
    if p is None:
        fr = [Fraction(c) for c in coords]
        if not any(fr):
            raise PreconditionError("all coordinates are zero")
        den = lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = reduce(gcd, ints)
        first = next(v for v in ints if v)
        if first < 0:
            g = -g
        return tuple(v // g for v in ints)
    vals = []
    for c in coords:
        if isinstance(c, Fraction):
            c = c.numerator * pow(c.denominator, -1, p)
        vals.append(int(c) % p)
    if not any(vals):
        raise PreconditionError("all coordinates are zero")
    inv = pow(next(v for v in vals if v), -1, p)
    return tuple(v * inv % p for v in vals)


def residuals(pt: ProjectivePoint) -> tuple[int, ...]:
    """The five linear forms and the quartic at ``pt`` (reduced mod p when relevant)."""
    x = pt.coords
    vals = [sum(a * b for a, b in zip(row, x)) for row in LINEAR_FORMS]
    vals.append(quartic(x))
    if pt.p is not None:
        vals = [v % pt.p for v in vals]
    return tuple(vals)


def is_on_variety(pt: ProjectivePoint) -> bool:
    return not any(residuals(pt))


def apply_signed_map(pt: ProjectivePoint, M: sp.SymplecticMatrix) -> ProjectivePoint:
    return ProjectivePoint(sp.signed_map(M).apply(pt.coords), pt.p)


@lru_cache(maxsize=None)
def linear_kernel(p: int | None = None):
    """Kernel basis of the linear forms over Q (integral, primitive) or F_p."""
    red = rref(ExactMatrix.of(LINEAR_FORMS, p))
    if p is not None:
        return red.rank, tuple(tuple(int(x) for x in v) for v in red.kernel_basis)
    basis = []
    for v in red.kernel_basis:
        den = lcm(*(x.denominator for x in v))
        basis.append(tuple(int(x * den) for x in v))
    return red.rank, tuple(basis)


def _canonical_rows(rows: np.ndarray, p: int | None) -> list[ProjectivePoint]:
    return sorted({ProjectivePoint(tuple(int(v) for v in r), p) for r in rows if r.any()})


def enumerate_small_points(domain: str | int | None = "q") -> list[ProjectivePoint]:
    """All points of the model with coordinates in {-1, 0, 1} (over Q) or in F_p.

    Over Q this scans the 3^10 sign/zero patterns.  Over F_p it runs through
    every vector of the kernel of the linear forms, which contains all
    candidates, and keeps those where the quartic vanishes.
    """
    p = parse_domain(domain)
    if p is None:
        cand = np.array(list(itertools.product((-1, 0, 1), repeat=10)), dtype=np.int64)
        keep = (cand @ LINEAR_ARRAY.T == 0).all(axis=1) & (quartic_array(cand) == 0)
        return _canonical_rows(cand[keep], None)
    return _small_points_mod_p(p)


@lru_cache(maxsize=None)
def _small_points_mod_p(p: int) -> list[ProjectivePoint]:
    _, basis = linear_kernel(p)
    b = np.array(basis, dtype=np.int64)
    coeffs = np.array(list(itertools.product(range(p), repeat=len(basis))), dtype=np.int64)
    vecs = (coeffs @ b) % p
    assert not ((vecs @ LINEAR_ARRAY.T) % p).any()
    keep = quartic_array(vecs) % p == 0
    return _canonical_rows(vecs[keep], p)


@dataclass(frozen=True)
class VanishingClosure:
    """Consequences of ``x_i = 0 (i in I)`` under the linear forms alone.

    ``relations`` holds triples ``(k, c, l)`` meaning ``x_k = c * x_l`` on the
    whole solution space, with ``k < l``, both surviving and c in {+1, -1}.
    ``raw_rows`` are reduced rows with three or more surviving terms.
    """

    input_set: frozenset[int]
    forced: frozenset[int]
    relations: tuple[tuple[int, int, int], ...]
    raw_rows: tuple[tuple, ...]

    @property
    def newly_forced(self) -> frozenset[int]:
        return self.forced - self.input_set


def linear_closure(I: Iterable[int], p: int | None = None) -> VanishingClosure:
    I = frozenset(I)
    for i in I:
        ch.char(i)
    unit_rows = [tuple(1 if c == i - 1 else 0 for c in range(10)) for i in sorted(I)]
    red = rref(ExactMatrix.of(list(LINEAR_FORMS) + unit_rows, p))
    kernel = red.kernel_basis
    forced = frozenset(j + 1 for j in range(10) if all(v[j] == 0 for v in kernel))
    surviving = [j for j in range(10) if j + 1 not in forced]
    relations = []
    for k, l in itertools.combinations(surviving, 2):
        for c in (1, -1):
            if all(v[k] == c * v[l] for v in kernel):
                relations.append((k + 1, c, l + 1))
    raw = []
    for row in red.reduced.rows:
        support = [j for j in surviving if row[j] != 0]
        if len(support) >= 3:
            raw.append(tuple(row))
    return VanishingClosure(I, forced, tuple(relations), tuple(raw))


def fixed_point_check(pt: ProjectivePoint) -> dict:
    """Check, for all 45 pairs (i, j), that ``x_i = eps(i,j) x_j`` holds exactly
    when the conjugate of the involution M_Q (which swaps m_1, m_2) that swaps ``m_i, m_j``
    fixes ``pt``.

    The conjugate is ``N M N^{-1}`` with ``{m_i, m_j} . N = {m_1, m_2}``; with
    the right dot action it swaps ``m_i`` and ``m_j``.
    """
    if not is_on_variety(pt):
        raise PreconditionError(f"{pt} is not on the model")
    pairs = []
    m1, m2 = ch.char(1), ch.char(2)
    for i, j in itertools.combinations(range(1, 11), 2):
        N = sp.find_transporter([ch.char(i), ch.char(j)], [m1, m2])
        conj = N @ sp.M_Q @ N.inverse()
        diff = pt[i] - sp.epsilon(i, j) * pt[j]
        equal = diff % pt.p == 0 if pt.p else diff == 0
        fixed = apply_signed_map(pt, conj) == pt
        pairs.append({"pair": (i, j), "coords_related": equal, "fixed": fixed, "holds": equal == fixed})
    return {"point": list(pt.coords), "pairs": pairs, "holds": all(r["holds"] for r in pairs)}
