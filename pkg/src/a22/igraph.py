"""Graph of intersection of the coordinate divisors D_i = {x_i = 0}.

A vertex is an optimal index set I, i.e. one that is closed under
"every witness point vanishing on I also vanishes at j".  Witnesses are the
{-1, 0, 1} points over Q, or all rational points over F_p.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import characteristics as ch
from . import variety
from .errors import ConfigurationError

# Dimension and irreducibility of Z_I per family: recorded reference data,
# never computed here.
DIM_METADATA = {
    "singleton": (2, True),
    "pair": (1, False),
    "syzygous_triple": (0, False),
    "azygous_quadruple": (1, True),
    "goepel_complement": (0, True),
}
FAMILY_ORDER = ("singleton", "pair", "syzygous_triple", "azygous_quadruple", "goepel_complement")


def _witness_array(witnesses) -> np.ndarray:
    if len(witnesses) == 0:
        raise ConfigurationError("witness closure needs at least one witness point")
    if isinstance(witnesses, np.ndarray):
        return witnesses
    return np.array([w.coords for w in witnesses], dtype=np.int64)


def witness_closure(I: Iterable[int], witnesses) -> frozenset[int]:
    """``I`` plus every j at which all witnesses vanishing on ``I`` vanish.

    Returns all of ``{1..10}`` when no witness vanishes on ``I``.
    """
    W = _witness_array(witnesses)
    cols = [i - 1 for i in I]
    hits = W[(W[:, cols] == 0).all(axis=1)] if cols else W
    if len(hits) == 0:
        return frozenset(range(1, 11))
    return frozenset(int(j) + 1 for j in np.flatnonzero((hits == 0).all(axis=0)))


def family(index_set: Iterable[int]) -> str:
    return ch.classify(ch.chars(index_set))


@dataclass(frozen=True)
class IntersectionVertex:
    index_set: tuple[int, ...]
    family: str
    children: tuple[tuple[int, ...], ...] = ()

    @property
    def depth(self) -> int:
        return len(self.index_set)

    @property
    def dim_metadata(self) -> tuple[int, bool] | None:
        return DIM_METADATA.get(self.family)


@dataclass
class IntersectionGraph:
    domain: str
    vertices: dict[tuple[int, ...], IntersectionVertex]
    edges: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    def by_depth(self) -> dict[int, list[IntersectionVertex]]:
        out: dict[int, list[IntersectionVertex]] = {}
        for v in sorted(self.vertices.values(), key=lambda v: (v.depth, v.index_set)):
            out.setdefault(v.depth, []).append(v)
        return out

    def depth_profile(self) -> dict[int, int]:
        return {d: len(vs) for d, vs in self.by_depth().items()}

    def family_counts(self) -> Counter:
        return Counter(v.family for v in self.vertices.values())

    def children_counts(self) -> dict[str, Counter]:
        """For each family, the multiset of (child family, number of children)."""
        out: dict[str, Counter] = {}
        for v in self.vertices.values():
            per = Counter(self.vertices[c].family for c in v.children)
            out.setdefault(v.family, Counter())[tuple(sorted(per.items()))] += 1
        return out

    def to_json(self) -> dict:
        verts = []
        for v in sorted(self.vertices.values(), key=lambda v: (v.depth, v.index_set)):
            dim, irr = v.dim_metadata or (None, None)
            verts.append({
                "indices": list(v.index_set),
                "depth": v.depth,
                "family": v.family,
                "dim": dim,
                "irreducible": irr,
            })
        return {
            "domain": self.domain,
            "vertices": verts,
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "dim_source": "recorded reference data, not computed",
        }

    def to_dot(self) -> str:
        lines = ["digraph intersection {", "  rankdir=TB;"]
        name = lambda ix: "v" + "_".join(map(str, ix))
        for depth, vs in self.by_depth().items():
            lines.append(f"  subgraph depth{depth} {{ rank=same;")
            for v in vs:
                label = "{" + ",".join(map(str, v.index_set)) + "}"
                lines.append(f'    {name(v.index_set)} [label="{label}", group="{v.family}"];')
            lines.append("  }")
        for a, b in self.edges:
            lines.append(f"  {name(a)} -> {name(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def witnesses_for(domain) -> list[variety.ProjectivePoint]:
    return variety.enumerate_small_points(domain)


def build_graph(domain="q", witnesses=None) -> IntersectionGraph:
    """Closures of all 1024 index subsets; vertices are the nonempty proper
    closed sets, edges the covering relations of inclusion."""
    p = variety.parse_domain(domain)
    W = _witness_array(witnesses if witnesses is not None else witnesses_for(p))
    closed = set()
    for r in range(1, 11):
        for I in itertools.combinations(range(1, 11), r):
            c = witness_closure(I, W)
            if len(c) < 10:
                closed.add(tuple(sorted(c)))
    sets = sorted(closed, key=lambda s: (len(s), s))
    fs = {s: frozenset(s) for s in sets}
    edges = []
    for a in sets:
        above = [b for b in sets if len(b) > len(a) and fs[a] < fs[b]]
        for b in above:
            if not any(fs[a] < fs[c] < fs[b] for c in above):
                edges.append((a, b))
    children: dict[tuple[int, ...], list] = {s: [] for s in sets}
    for a, b in edges:
        children[a].append(b)
    vertices = {s: IntersectionVertex(s, family(s), tuple(children[s])) for s in sets}
    return IntersectionGraph(variety.domain_name(p), vertices, edges)


@dataclass(frozen=True)
class GraphDiff:
    vertices_only_in_first: tuple[tuple[int, ...], ...]
    vertices_only_in_second: tuple[tuple[int, ...], ...]
    edges_only_in_first: tuple
    edges_only_in_second: tuple

    @property
    def empty(self) -> bool:
        return not (self.vertices_only_in_first or self.vertices_only_in_second
                    or self.edges_only_in_first or self.edges_only_in_second)


def compare_graphs(g1: IntersectionGraph, g2: IntersectionGraph) -> GraphDiff:
    v1, v2 = set(g1.vertices), set(g2.vertices)
    e1, e2 = set(g1.edges), set(g2.edges)
    return GraphDiff(tuple(sorted(v1 - v2)), tuple(sorted(v2 - v1)),
                     tuple(sorted(e1 - e2)), tuple(sorted(e2 - e1)))


def combinatorial_vertices() -> set[tuple[int, ...]]:
    """Index sets of the five families, built from characteristic combinatorics only."""
    out = {(i,) for i in range(1, 11)}
    out |= set(itertools.combinations(range(1, 11), 2))
    out |= {ch.indices(t) for t in ch.enumerate_kind("syzygous_triples")}
    out |= {ch.indices(q) for q in ch.enumerate_kind("azygous_quads")}
    out |= set(ch.goepel_complements())
    return out


def write_graph(graph: IntersectionGraph, out: str, dot: str | None = None) -> None:
    with open(out, "w") as fh:
        json.dump(graph.to_json(), fh, indent=1)
    if dot:
        with open(dot, "w") as fh:
            fh.write(graph.to_dot())
