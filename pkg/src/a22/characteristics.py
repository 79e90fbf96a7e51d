"""Even theta characteristics and their syzygy combinatorics.

A characteristic is a 4-tuple of bits ``(m'_1, m'_2, m''_1, m''_2)``.  Subsets
of the ten even ones are reported as tuples of characteristics in binary
order, and lists of subsets are sorted by their member indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import PreconditionError

Char = tuple[int, int, int, int]

ALL_CHARS: tuple[Char, ...] = tuple(product((0, 1), repeat=4))


def q2(m: Sequence[int]) -> int:
    return (m[0] * m[2] + m[1] * m[3]) % 2


def add(*ms: Sequence[int]) -> Char:
    return tuple(sum(bits) % 2 for bits in zip(*ms))  # type: ignore[return-value]


EVEN: tuple[Char, ...] = tuple(m for m in ALL_CHARS if q2(m) == 0)
ODD: tuple[Char, ...] = tuple(m for m in ALL_CHARS if q2(m) == 1)
_INDEX = {m: i + 1 for i, m in enumerate(EVEN)}


def index(m: Sequence[int]) -> int:
    """1-based coordinate index of an even characteristic."""
    try:
        return _INDEX[tuple(m)]
    except KeyError:
        raise PreconditionError(f"{fmt(m)} is not an even characteristic") from None


def char(i: int) -> Char:
    if not 1 <= i <= 10:
        raise PreconditionError(f"coordinate index {i} outside 1..10")
    return EVEN[i - 1]


def indices(ms: Iterable[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sorted(index(m) for m in ms))


def chars(ix: Iterable[int]) -> tuple[Char, ...]:
    return tuple(char(i) for i in sorted(ix))


def parse(s: str) -> Char:
    """``"1001"`` -> ``(1, 0, 0, 1)``."""
    s = s.strip("() ").replace(" ", "")
    if len(s) != 4 or set(s) - {"0", "1"}:
        raise ValueError(f"not a characteristic: {s!r}")
    return tuple(int(b) for b in s)  # type: ignore[return-value]


def fmt(m: Sequence[int]) -> str:
    return "(" + "".join(str(b) for b in m) + ")"


def _check_distinct_even(ms: Sequence[Sequence[int]]) -> list[Char]:
    out = [tuple(m) for m in ms]
    for m in out:
        if m not in _INDEX:
            raise PreconditionError(f"{fmt(m)} is not even")
    if len(set(out)) != len(out):
        raise PreconditionError("characteristics must be distinct")
    return out  # type: ignore[return-value]


def e_triple(x: Sequence[int], y: Sequence[int], z: Sequence[int]) -> int:
    """0 for a syzygous triple, 1 for an azygous one."""
    x, y, z = _check_distinct_even([x, y, z])
    return (q2(x) + q2(y) + q2(z) + q2(add(x, y, z))) % 2


def _all_triples_have(quad: Sequence[Char], value: int) -> bool:
    return all(e_triple(*t) == value for t in combinations(quad, 3))


@lru_cache(maxsize=None)
def _tables() -> dict[str, tuple[tuple[Char, ...], ...]]:
    triples = list(combinations(EVEN, 3))
    quads = list(combinations(EVEN, 4))
    return {
        "even_chars": tuple((m,) for m in EVEN),
        "syzygous_triples": tuple(t for t in triples if e_triple(*t) == 0),
        "azygous_triples": tuple(t for t in triples if e_triple(*t) == 1),
        "goepel_quads": tuple(q for q in quads if _all_triples_have(q, 0)),
        "azygous_quads": tuple(q for q in quads if _all_triples_have(q, 1)),
    }


KINDS = ("even_chars", "syzygous_triples", "azygous_triples", "goepel_quads", "azygous_quads")


def enumerate_kind(kind: str) -> list:
    """Complete, canonically sorted list for one of :data:`KINDS`.

    ``even_chars`` yields bare characteristics, the other kinds yield tuples.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {KINDS}")
    table = _tables()[kind]
    if kind == "even_chars":
        return [t[0] for t in table]
    return list(table)


def goepel_quadruples() -> list[tuple[Char, ...]]:
    return enumerate_kind("goepel_quads")


def azygous_quadruples() -> list[tuple[Char, ...]]:
    return enumerate_kind("azygous_quads")


def goepel_complements() -> list[tuple[int, ...]]:
    """Index sets of the 15 complements of Göpel quadruples."""
    return [tuple(i for i in range(1, 11) if i not in indices(q)) for q in goepel_quadruples()]


@dataclass(frozen=True)
class Completions:
    """Elements extending a pair to a syzygous/azygous triple, or a triple to
    a Göpel/azygous quadruple (reported under ``syzygous``/``azygous``)."""

    syzygous: tuple[Char, ...]
    azygous: tuple[Char, ...]


def completions(subset: Sequence[Sequence[int]]) -> Completions:
    members = _check_distinct_even(subset)
    rest = [w for w in EVEN if w not in members]
    if len(members) == 2:
        x, y = members
        syz = tuple(w for w in rest if e_triple(x, y, w) == 0)
        azy = tuple(w for w in rest if e_triple(x, y, w) == 1)
        return Completions(syz, azy)
    if len(members) == 3:
        syz = tuple(w for w in rest if _all_triples_have(members + [w], 0))
        azy = tuple(w for w in rest if _all_triples_have(members + [w], 1))
        if len(syz) + len(azy) != 1:
            raise PreconditionError(f"triple {members} has no unique quadruple completion")
        return Completions(syz, azy)
    raise PreconditionError("completions are defined for pairs and triples only")


def classify(subset: Iterable[Sequence[int]]) -> str:
    """Name the combinatorial family of a subset of E (by its members)."""
    members = _check_distinct_even(list(subset))
    n = len(members)
    if n == 1:
        return "singleton"
    if n == 2:
        return "pair"
    if n == 3:
        return "syzygous_triple" if e_triple(*members) == 0 else "azygous_triple"
    if n == 4:
        if _all_triples_have(members, 0):
            return "goepel_quadruple"
        if _all_triples_have(members, 1):
            return "azygous_quadruple"
    if n == 6:
        comp = [m for m in EVEN if m not in members]
        if _all_triples_have(comp, 0):
            return "goepel_complement"
    return "other"


def disjointness_profile(subset: Iterable[Sequence[int]]) -> int:
    """Number of Göpel quadruples disjoint from ``subset``."""
    members = set(_check_distinct_even(list(subset)))
    return sum(1 for q in goepel_quadruples() if not members.intersection(q))


def symplectic_form(x: Sequence[int], y: Sequence[int]) -> int:
    return (x[0] * y[2] + x[1] * y[3] + x[2] * y[0] + x[3] * y[1]) % 2


def lagrangian_translates() -> set[frozenset[Char]]:
    """Translates ``w + L`` (``w`` in E, ``L`` maximal isotropic) lying inside E.

    Independent description of the Göpel quadruples.
    """
    nonzero = [v for v in ALL_CHARS if any(v)]
    planes = set()
    for u, v in combinations(nonzero, 2):
        if symplectic_form(u, v) == 0:
            planes.add(frozenset([(0, 0, 0, 0), u, v, add(u, v)]))
    out = set()
    for plane in planes:
        for w in EVEN:
            coset = frozenset(add(w, x) for x in plane)
            if all(q2(c) == 0 for c in coset):
                out.add(coset)
    return out
