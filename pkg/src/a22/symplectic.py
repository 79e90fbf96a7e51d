"""Sp_4(F_2), its affine-twisted action on characteristics, and the signed
action on the ten theta coordinates.

Matrices act on row vectors from the right, in 2x2 blocks ``(A B; C D)``.
The dot action is ``m . M = m M + ((C^t A)_0, (D^t B)_0)`` where ``X_0`` is
the diagonal of ``X``.  It is a right action: ``(m.M).N = m.(MN)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import numpy as np

from . import characteristics as ch
from .errors import PreconditionError

J2 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=np.int64)

# fixes Q; swaps characteristics 1,2 and 6,9 and 5,10
M_Q_ROWS = ((1, 0, 0, 1), (1, 1, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1))


def is_symplectic(m: Sequence[Sequence[int]]) -> bool:
    a = np.asarray(m, dtype=np.int64) % 2
    if a.shape != (4, 4):
        return False
    return bool(np.array_equal((a.T @ J2 @ a) % 2, J2))


@dataclass(frozen=True)
class SymplecticMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) % 2 for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not is_symplectic(rows):
            raise PreconditionError(f"not in Sp_4(F_2): {rows}")

    @classmethod
    def from_array(cls, a) -> "SymplecticMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in np.asarray(a)))

    @classmethod
    def identity(cls) -> "SymplecticMatrix":
        return cls.from_array(np.eye(4, dtype=np.int64))

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.rows, dtype=np.int64)
        a.setflags(write=False)
        return a

    @property
    def blocks(self):
        a = self.array
        return a[:2, :2], a[:2, 2:], a[2:, :2], a[2:, 2:]

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix.from_array((self.array @ other.array) % 2)

    def inverse(self) -> "SymplecticMatrix":
        # M^{-1} = J M^t J over F_2
        return SymplecticMatrix.from_array((J2 @ self.array.T @ J2) % 2)

    @cached_property
    def twist(self) -> tuple[int, ...]:
        """``((C^t A)_0, (D^t B)_0)``, the translation part of the dot action."""
        a, b, c, d = self.blocks
        return tuple(int(x) % 2 for x in np.concatenate([np.diag(c.T @ a), np.diag(d.T @ b)]))

    @cached_property
    def sign_vector(self) -> tuple[int, ...]:
        """``((B A^t)_0, (C D^t)_0)``; the coordinate sign at m is (-1)^(m . this)."""
        a, b, c, d = self.blocks
        return tuple(int(x) % 2 for x in np.concatenate([np.diag(b @ a.T), np.diag(c @ d.T)]))

    def __repr__(self):
        return "SymplecticMatrix(" + " ".join("".join(map(str, r)) for r in self.rows) + ")"


M_Q = SymplecticMatrix(M_Q_ROWS)


def dot_action(m: Sequence[int], M: SymplecticMatrix) -> ch.Char:
    v = (np.asarray(m, dtype=np.int64) @ M.array) % 2
    return tuple(int((x + t) % 2) for x, t in zip(v, M.twist))  # type: ignore[return-value]


def coordinate_sign(m: Sequence[int], M: SymplecticMatrix) -> int:
    """``phi(m, M)`` in {+1, -1}."""
    return -1 if sum(a * b for a, b in zip(m, M.sign_vector)) % 2 else 1


@dataclass(frozen=True)
class SignedCoordinateMap:
    """``(M . x)_i = signs[i] * x_{permutation[i]}`` with 1-based indices.

    ``permutation[i-1]`` is the index of ``m_i . M``; tuples are 0-offset
    storage of 1-based values.
    """

    permutation: tuple[int, ...]
    signs: tuple[int, ...]

    def apply(self, coords: Sequence):
        return tuple(s * coords[j - 1] for s, j in zip(self.signs, self.permutation))


def signed_map(M: SymplecticMatrix) -> SignedCoordinateMap:
    perm = tuple(ch.index(dot_action(m, M)) for m in ch.EVEN)
    signs = tuple(coordinate_sign(m, M) for m in ch.EVEN)
    return SignedCoordinateMap(perm, signs)


def transvection(v: Sequence[int]) -> SymplecticMatrix:
    """``x -> x + <x, v> v`` as a matrix acting on row vectors."""
    col = (J2 @ np.asarray(v, dtype=np.int64)).reshape(4, 1)
    return SymplecticMatrix.from_array((np.eye(4, dtype=np.int64) + col @ np.asarray(v).reshape(1, 4)) % 2)


@lru_cache(maxsize=1)
def enumerate_group() -> tuple[SymplecticMatrix, ...]:
    """All 720 elements, by breadth-first closure under the 15 transvections."""
    gens = [transvection(v) for v in product((0, 1), repeat=4) if any(v)]
    ident = SymplecticMatrix.identity()
    seen = {ident.rows: ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for t in gens:
            h = g @ t
            if h.rows not in seen:
                seen[h.rows] = h
                queue.append(h)
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=1)
def _permutation_table() -> tuple[tuple[int, ...], ...]:
    return tuple(signed_map(M).permutation for M in enumerate_group())


def act_on_indices(ix: Iterable[int], M: SymplecticMatrix) -> frozenset[int]:
    return frozenset(ch.index(dot_action(ch.char(i), M)) for i in ix)


def orbit(seed: Iterable[int], group: Sequence[SymplecticMatrix] | None = None) -> set[frozenset[int]]:
    """Orbit of an index subset of E under the dot action."""
    seed = frozenset(seed)
    if group is None:
        return {frozenset(perm[i - 1] for i in seed) for perm in _permutation_table()}
    return {act_on_indices(seed, M) for M in group}


def epsilon(i: int, j: int) -> int:
    if i == j:
        raise PreconditionError("epsilon needs distinct indices")
    return -1 if ch.q2(ch.add(ch.char(i), ch.char(j))) else 1


def find_transporter(src: Sequence[Sequence[int]], dst: Sequence[Sequence[int]]) -> SymplecticMatrix | None:
    """Some M with ``src[k] . M == dst[k]`` for every k, or None."""
    if len(src) != len(dst) or len(src) > 4:
        raise PreconditionError("tuples must have equal length <= 4")
    src = [tuple(m) for m in src]
    dst = [tuple(m) for m in dst]
    for M in enumerate_group():
        if all(dot_action(a, M) == b for a, b in zip(src, dst)):
            return M
    return None


def sign_cocycle(M: SymplecticMatrix, N: SymplecticMatrix) -> int | None:
    """Global factor c with ``N.(M.x) = c (NM).x`` for all x, or None if the
    sign vectors do not agree up to one global factor."""
    sm, sn, snm = signed_map(M), signed_map(N), signed_map(N @ M)
    ratios = set()
    for i in range(10):
        # (N.(M.x))_i = sn[i] * (M.x)_{pn[i]} = sn[i] * sm[pn[i]] * x_{pm[pn[i]]}
        composed = sn.signs[i] * sm.signs[sn.permutation[i] - 1]
        ratios.add(composed * snm.signs[i])
    return ratios.pop() if len(ratios) == 1 else None


def epsilon_cocycle_failures() -> list[tuple[int, int, int]]:
    """Ordered triples of distinct indices with eps(i,j) eps(j,k) != eps(i,k).

    The product eps(i,j) eps(j,k) eps(i,k) is (-1)^e(m_i, m_j, m_k), so the
    failures are exactly the orderings of azygous triples.
    """
    return [(i, j, k) for i, j, k in permutations(range(1, 11), 3)
            if epsilon(i, j) * epsilon(j, k) != epsilon(i, k)]


def group_report(M: SymplecticMatrix = M_Q) -> dict:
    """Order, orbit sizes on the five families, eps table and the sign table of M."""
    seeds = {
        "pairs": (1, 2),
        "syzygous_triples": ch.indices(ch.enumerate_kind("syzygous_triples")[0]),
        "azygous_triples": ch.indices(ch.enumerate_kind("azygous_triples")[0]),
        "goepel_quadruples": ch.indices(ch.goepel_quadruples()[0]),
        "azygous_quadruples": ch.indices(ch.azygous_quadruples()[0]),
    }
    sm = signed_map(M)
    failures = epsilon_cocycle_failures()
    return {
        "order": len(enumerate_group()),
        "orbit_sizes": {k: len(orbit(v)) for k, v in seeds.items()},
        "epsilon": {f"{i},{j}": epsilon(i, j) for i, j in combinations(range(1, 11), 2)},
        "epsilon_cocycle": {"triples": 720, "failures": len(failures), "holds": not failures},
        "matrix": [list(r) for r in M.rows],
        "phi": {str(i): sm.signs[i - 1] for i in range(1, 11)},
        "permutation": {str(i): sm.permutation[i - 1] for i in range(1, 11)},
    }
