import itertools
from math import factorial

import pytest
from hypothesis import given, settings

from mecmc.amo import (
    Amo,
    build_orientation_space,
    count_amos,
    enumerate_amos,
    flip_candidates,
    is_amo,
    non_follower_cliques,
    orient_from_source_sequence,
    peo_orientation,
)
from mecmc.graphs import (
    CapExceededError,
    UndirectedGraph,
    clique_tree,
    complete_graph,
    glued_clique_chain,
    path_graph,
    star_graph,
)
from conftest import TREE_NAMES
from strategies import chordal_graphs


def brute_amos(g):
    """All orientations passing is_amo, by 2^|E| filtering."""
    edges = sorted(g.edges)
    out = set()
    for mask in range(2 ** len(edges)):
        arcs = frozenset(
            (u, v) if mask >> i & 1 else (v, u)
            for i, (u, v) in enumerate(edges)
        )
        if is_amo(g, arcs):
            out.add(arcs)
    return out


def test_is_amo_examples():
    p3 = path_graph(3)
    assert is_amo(p3, {(0, 1), (1, 2)})
    assert not is_amo(p3, {(0, 1), (2, 1)})
    assert not is_amo(complete_graph(3), {(0, 1), (1, 2), (2, 0)})


def test_non_chordal_graphs_have_no_amos():
    c4 = UndirectedGraph(4, {(0, 1), (1, 2), (2, 3), (0, 3)})
    assert not brute_amos(c4)
    c5 = UndirectedGraph(5, {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)})
    assert not brute_amos(c5)


def test_unique_source_examples():
    k3 = complete_graph(3)
    a = orient_from_source_sequence(k3, (2, 0, 1))
    assert a.source() == 2
    p = orient_from_source_sequence(path_graph(3), (0, 1, 2))
    assert p.source() == 0
    s = orient_from_source_sequence(star_graph(4), (0, 1, 2, 3))
    assert s.source() == 0


def test_orient_from_source_sequence_examples():
    k3 = complete_graph(3)
    a = orient_from_source_sequence(k3, (0, 1, 2))
    assert a.arcs == frozenset({(0, 1), (0, 2), (1, 2)})
    p = orient_from_source_sequence(path_graph(3), (1, 0, 2))
    assert p.arcs == frozenset({(1, 0), (1, 2)})


def test_orient_from_source_sequence_rejects_non_source():
    # after removing 0 from the path 0-1-2, vertex 2 is not a source of the
    # rest once 1 must point at it
    with pytest.raises(ValueError):
        orient_from_source_sequence(complete_graph(3), (0, 0, 1))
    with pytest.raises(ValueError):
        orient_from_source_sequence(star_graph(4), (1, 2, 0, 3))


def test_complete_graph_bijection_with_permutations():
    for n in (3, 4, 5):
        g = complete_graph(n)
        amos = enumerate_amos(g)
        assert len(amos) == factorial(n)
        keys = {a.key() for a in amos}
        for perm in itertools.permutations(range(n)):
            assert orient_from_source_sequence(g, perm).key() in keys


def test_flip_adjacency_on_k4_is_adjacent_transposition():
    g = complete_graph(4)
    space = build_orientation_space(g)

    def to_perm(a):
        order = sorted(range(4), key=lambda v: len(a.parents[v]))
        return tuple(order)

    for i, a in enumerate(space.states):
        pa = to_perm(a)
        for j in space.adjacency[i]:
            pb = to_perm(space.states[j])
            diff = [k for k in range(4) if pa[k] != pb[k]]
            assert len(diff) == 2 and diff[1] == diff[0] + 1
            assert pa[diff[0]] == pb[diff[1]] and pa[diff[1]] == pb[diff[0]]


def test_enumerate_counts():
    assert len(enumerate_amos(complete_graph(3))) == 6
    assert len(enumerate_amos(glued_clique_chain([4, 4], [2]))) == 88
    assert count_amos(glued_clique_chain([4, 4], [2])) == 88


@given(chordal_graphs(min_n=1, max_n=5, connected=True))
@settings(max_examples=80, deadline=None)
def test_enumeration_matches_bruteforce(g):
    amos = enumerate_amos(g)
    keys = {a.key() for a in amos}
    assert len(keys) == len(amos)
    assert keys == {tuple(sorted(b)) for b in brute_amos(g)}
    assert count_amos(g) == len(amos)


@given(chordal_graphs(min_n=1, max_n=6))
@settings(max_examples=60, deadline=None)
def test_count_multiplies_over_components(g):
    total = count_amos(g)
    prod = 1
    for comp in g.connected_components():
        comp = sorted(comp)
        relabel = {v: i for i, v in enumerate(comp)}
        sub = UndirectedGraph(
            len(comp),
            {
                (relabel[u], relabel[v])
                for u, v in g.edges
                if u in relabel and v in relabel
            },
        )
        prod *= count_amos(sub)
    assert total == prod


def test_every_amo_has_unique_source(suite):
    for g in suite.values():
        for a in enumerate_amos(g):
            sources = [v for v in range(g.n) if not a.parents[v]]
            assert sources == [a.source()]


def test_edges_orient_away_from_source(suite):
    for g in suite.values():
        for a in enumerate_amos(g):
            s = a.source()
            dist = {s: 0}
            frontier = [s]
            while frontier:
                nxt = []
                for v in frontier:
                    for w in g.adj[v]:
                        if w not in dist:
                            dist[w] = dist[v] + 1
                            nxt.append(w)
                frontier = nxt
            for u, v in a.arcs:
                assert dist[u] <= dist[v]
                if dist[u] < dist[v]:
                    assert (v, u) not in a.arcs


def test_flip_candidates_examples():
    k3 = complete_graph(3)
    a = orient_from_source_sequence(k3, (0, 1, 2))
    assert len(flip_candidates(a)) == 2
    # tree: flippable edges are exactly those at the source
    star = star_graph(5)
    b = orient_from_source_sequence(star, (2, 0, 1, 3, 4))
    assert flip_candidates(b) == [(0, 2)]


def test_flip_candidates_are_exactly_amo_preserving(suite):
    for name in ("k3", "path4", "two_k3_edge", "two_k4_share3"):
        g = suite[name]
        for a in enumerate_amos(g):
            legal = set(flip_candidates(a))
            for u, v in sorted(g.edges):
                uu, vv = (u, v) if (u, v) in a.arcs else (v, u)
                flipped = frozenset(a.arcs - {(uu, vv)} | {(vv, uu)})
                assert ((u, v) in legal) == is_amo(g, flipped)


def test_degree_formula(suite, suite_spaces):
    # loop-free degree in the flip graph: |G| - C(G) + M(v) - 1 with |G| the
    # vertex count and C(G) the number of maximal cliques
    for name, g in suite.items():
        space = suite_spaces[name]
        c_g = len(clique_tree(g).cliques)
        degs = []
        for i in range(space.size):
            m_v = space.nonfollower_counts[i]
            assert space.degree(i) == g.n - c_g + m_v - 1
            degs.append(space.degree(i))
        assert min(degs) == g.n - c_g


def test_trees_give_isomorphic_flip_graph(suite):
    for name in TREE_NAMES:
        g = suite[name]
        space = build_orientation_space(g)
        assert space.size == g.n
        src = {i: space.states[i].source() for i in range(space.size)}
        assert sorted(src.values()) == list(range(g.n))
        for i in range(space.size):
            image = {src[j] for j in space.adjacency[i]}
            assert image == set(g.adj[src[i]])


def test_non_follower_cliques_examples():
    k4 = complete_graph(4)
    ct = clique_tree(k4)
    a = peo_orientation(k4)
    assert non_follower_cliques(a, ct.cliques) == frozenset({0})

    p3 = path_graph(3)
    ct3 = clique_tree(p3)
    chain = orient_from_source_sequence(p3, (0, 1, 2))
    nf = non_follower_cliques(chain, ct3.cliques)
    assert {tuple(sorted(ct3.cliques[i])) for i in nf} == {(0, 1)}


def test_gluing_face_size():
    space = build_orientation_space(glued_clique_chain([4, 4], [2]))
    face = [s for s in space.nonfollower_sets if len(s) == 2]
    assert space.size == 88
    assert len(face) == 8


def test_peo_orientation_is_amo(suite):
    for g in suite.values():
        a = peo_orientation(g)
        assert is_amo(g, a.arcs)


def test_state_cap_enforced():
    with pytest.raises(CapExceededError):
        build_orientation_space(complete_graph(5), cap=100)
    with pytest.raises(CapExceededError):
        enumerate_amos(complete_graph(5), cap=100)


def test_space_json_export():
    import json

    space = build_orientation_space(path_graph(3))
    payload = json.loads(space.to_json())
    assert payload["n"] == 3
    assert len(payload["states"]) == 3
    assert payload["adjacency"][0]
