import itertools
import json
from collections import Counter
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a22 import characteristics as ch
from a22 import igraph, variety
from a22 import symplectic as sp
from a22.errors import ConfigurationError


@lru_cache(maxsize=None)
def graph(domain):
    return igraph.build_graph(domain)


W_Q = igraph.witnesses_for(None)


def test_witness_closure_examples():
    assert igraph.witness_closure({1}, W_Q) == {1}
    assert igraph.witness_closure({1, 2}, W_Q) == {1, 2}
    with pytest.raises(ConfigurationError):
        igraph.witness_closure({1}, [])


def test_syzygous_triple_plus_completion_index():
    syz = ch.enumerate_kind("syzygous_triples")[0]
    I = set(ch.indices(syz))
    (extra,) = ch.completions(syz).syzygous
    # adding the Göpel completion leaves no witness: the set vanishes nowhere
    assert igraph.witness_closure(I | {ch.index(extra)}, W_Q) == frozenset(range(1, 11))
    # adding an index outside the quadruple lands on a Göpel complement
    quad = set(ch.indices(syz + (extra,)))
    other = min(set(range(1, 11)) - quad)
    closed = igraph.witness_closure(I | {other}, W_Q)
    assert tuple(sorted(closed)) in ch.goepel_complements()


def test_depth_profile_and_families_over_q():
    g = graph("q")
    assert g.depth_profile() == {1: 10, 2: 45, 3: 60, 4: 15, 6: 15}
    assert g.family_counts() == Counter({"singleton": 10, "pair": 45, "syzygous_triple": 60,
                                         "azygous_quadruple": 15, "goepel_complement": 15})


def test_optimal_sets_are_exactly_the_five_families():
    assert set(graph("q").vertices) == igraph.combinatorial_vertices()


def test_children_counts_over_q():
    cc = graph("q").children_counts()
    assert cc["singleton"] == Counter({(("pair", 9),): 10})
    assert cc["pair"] == Counter({(("azygous_quadruple", 2), ("syzygous_triple", 4)): 45})
    assert cc["syzygous_triple"] == Counter({(("goepel_complement", 2),): 60})
    assert cc["azygous_quadruple"] == Counter({(("goepel_complement", 3),): 15})
    assert cc["goepel_complement"] == Counter({(): 15})


def test_pair_to_azygous_quadruple_double_count():
    # 15 quadruples with 6 pairs each, spread evenly over 45 pairs
    per_pair = Counter(p for q in ch.azygous_quadruples() for p in itertools.combinations(ch.indices(q), 2))
    assert set(per_pair.values()) == {15 * 6 // 45}


def test_edges_are_transitively_reduced():
    g = graph("q")
    edges = set(g.edges)
    for (a, b), (c, d) in itertools.product(edges, edges):
        if b == c:
            assert (a, d) not in edges


def test_group_acts_transitively_on_each_level():
    g = graph("q")
    for depth, vs in g.by_depth().items():
        by_family = {}
        for vert in vs:
            by_family.setdefault(vert.family, set()).add(frozenset(vert.index_set))
        for fam, sets in by_family.items():
            seed = next(iter(sets))
            assert sp.orbit(seed) == sets


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(1, 10), max_size=7))
def test_witness_closure_contains_linear_forcing(I):
    assert variety.linear_closure(I).forced <= igraph.witness_closure(I, W_Q)


def test_vertex_metadata():
    v = graph("q").vertices[(1,)]
    assert v.depth == 1 and v.family == "singleton"
    assert v.dim_metadata == igraph.DIM_METADATA["singleton"]


@pytest.mark.parametrize("domain", ["f5", "f7"])
def test_large_characteristic_matches_q(domain):
    assert igraph.compare_graphs(graph("q"), graph(domain)).empty


@pytest.mark.parametrize("domain", ["f2", "f3"])
def test_small_characteristic_differs(domain):
    d = igraph.compare_graphs(graph("q"), graph(domain))
    assert not d.empty
    extra = d.vertices_only_in_second
    assert len(extra) == 15
    assert {frozenset(e) for e in extra} == {frozenset(ch.indices(q)) for q in ch.goepel_quadruples()}


def test_compare_with_self_is_empty():
    assert igraph.compare_graphs(graph("q"), graph("q")).empty


def test_json_and_dot_export(tmp_path):
    out, dot = tmp_path / "g.json", tmp_path / "g.dot"
    igraph.write_graph(graph("q"), str(out), str(dot))
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 145
    assert set(data["vertices"][0]) == {"indices", "depth", "family", "dim", "irreducible"}
    assert all(len(e) == 2 for e in data["edges"])
    assert dot.read_text().startswith("digraph")
