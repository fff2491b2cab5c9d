"""Tests for Markov equivalence and essential graphs."""

import itertools

import pytest
from hypothesis import given, settings

from mecmc.essential import (
    class_size,
    classification_sweep,
    enumerate_dags,
    enumerate_essential_graphs,
    essential_graph_by_intersection,
    essential_graph_of_dag,
    is_essential_graph,
    is_strongly_protected,
    markov_equivalent,
    mec_of_dag,
    protected_directed_only,
)
from mecmc.graphs import Dag, Pdag, edge_key, immoralities, skeleton

from strategies import small_dags

# Distinct essential graphs on n vertices, frozen from the exhaustive
# classification of all DAGs (equivalently the Pdag filter).
ESSENTIAL_COUNTS = {1: 1, 2: 2, 3: 11, 4: 185}
# Labeled DAG counts (Robinson's recurrence gives the same numbers).
DAG_COUNTS = {1: 1, 2: 3, 3: 25, 4: 543}


def test_markov_equivalent_examples():
    assert markov_equivalent(Dag(2, [(0, 1)]), Dag(2, [(1, 0)]))
    collider = Dag(3, [(0, 2), (1, 2)])
    chain = Dag(3, [(0, 2), (2, 1)])
    assert not markov_equivalent(collider, chain)
    assert markov_equivalent(collider, collider)
    assert not markov_equivalent(Dag(2, []), Dag(3, []))


def test_mec_of_dag_examples():
    assert len(mec_of_dag(Dag(2, [(0, 1)]))) == 2
    assert len(mec_of_dag(Dag(3, [(0, 2), (1, 2)]))) == 1
    k3 = Dag(3, [(0, 1), (0, 2), (1, 2)])
    assert len(mec_of_dag(k3)) == 6


def test_mec_members_are_equivalent():
    d = Dag(4, [(0, 1), (1, 2), (0, 3), (3, 2)])
    members = mec_of_dag(d)
    assert d in members
    assert all(markov_equivalent(d, m) for m in members)
    assert len(set(members)) == len(members)


def test_essential_graph_examples():
    eg = essential_graph_of_dag(Dag(2, [(0, 1)]))
    assert eg.arcs == frozenset() and eg.lines == frozenset({(0, 1)})

    eg = essential_graph_of_dag(Dag(3, [(0, 2), (1, 2)]))
    assert eg.arcs == frozenset({(0, 2), (1, 2)}) and eg.lines == frozenset()

    k3 = Dag(3, [(0, 1), (0, 2), (1, 2)])
    eg = essential_graph_of_dag(k3)
    assert eg.arcs == frozenset()
    assert eg.lines == frozenset({(0, 1), (0, 2), (1, 2)})


def test_strong_protection_examples():
    # (a) chain w->u->v with w, v nonadjacent
    chain = Pdag(3, [(0, 1), (1, 2)], [])
    assert is_strongly_protected(chain, (1, 2))
    # (b) collider u->v<-w with u, w nonadjacent
    collider = Pdag(3, [(0, 2), (1, 2)], [])
    assert is_strongly_protected(collider, (0, 2))
    # (c) u->w->v alongside u->v
    tri = Pdag(3, [(0, 1), (1, 2), (0, 2)], [])
    assert is_strongly_protected(tri, (0, 2))
    # (d) two undirected neighbors of u pointing at v, mutually nonadjacent
    wheel = Pdag(
        4, [(1, 3), (2, 3), (0, 3)], [(0, 1), (0, 2)]
    )
    assert is_strongly_protected(wheel, (0, 3))
    # isolated arc: no configuration
    assert not is_strongly_protected(Pdag(2, [(0, 1)], []), (0, 1))
    with pytest.raises(ValueError):
        is_strongly_protected(Pdag(2, [(0, 1)], []), (1, 0))


def test_protected_directed_only_examples():
    collider = Dag(3, [(0, 2), (1, 2)])
    assert protected_directed_only(collider, (0, 2))
    assert not protected_directed_only(Dag(2, [(0, 1)]), (0, 1))
    with pytest.raises(ValueError):
        protected_directed_only(Dag(2, [(0, 1)]), (1, 0))


def test_protected_directed_only_agrees_with_configurations():
    # On all-directed graphs configuration (d) cannot fire, so the
    # parent-set test must match the full check arc by arc.
    for d in enumerate_dags(4):
        p = Pdag(d.n, d.arcs, [])
        for arc in d.arcs:
            assert protected_directed_only(d, arc) == is_strongly_protected(
                p, arc
            )


def test_is_essential_graph_examples():
    assert is_essential_graph(Pdag(3, [], []))
    assert is_essential_graph(Pdag(2, [], [(0, 1)]))
    # forbidden induced a -> b - c with a, c nonadjacent
    assert not is_essential_graph(Pdag(3, [(0, 1)], [(1, 2)]))
    # lone arc is not strongly protected
    assert not is_essential_graph(Pdag(2, [(0, 1)], []))
    # undirected part must be chordal
    assert not is_essential_graph(
        Pdag(4, [], [(0, 1), (1, 2), (2, 3), (0, 3)])
    )


def test_class_size_examples():
    assert class_size(Pdag(3, [(0, 2), (1, 2)], [])) == 1
    assert class_size(Pdag(3, [], [(0, 1), (0, 2), (1, 2)])) == 6
    assert class_size(Pdag(4, [], [(0, 1), (2, 3)])) == 4


@settings(deadline=None, max_examples=150)
@given(small_dags(max_n=5))
def test_fixpoint_matches_intersection(d):
    assert essential_graph_of_dag(d) == essential_graph_by_intersection(d)


def test_fixpoint_matches_intersection_exhaustive():
    for n in (1, 2, 3, 4):
        for d in enumerate_dags(n):
            assert essential_graph_of_dag(d) == essential_graph_by_intersection(d)


def test_essential_graph_respects_equivalence():
    # d1 ~ d2 iff they map to the same essential graph; checking that the
    # (skeleton, immoralities) signature and the essential-graph key induce
    # the same partition of all DAGs covers every pair at once.
    for n in (2, 3, 4):
        by_signature = {}
        for d in enumerate_dags(n):
            sig = (skeleton(d).edges, immoralities(d))
            by_signature.setdefault(sig, set()).add(
                essential_graph_of_dag(d).key()
            )
        keys = list(by_signature.values())
        assert all(len(ks) == 1 for ks in keys)
        distinct = {next(iter(ks)) for ks in keys}
        assert len(distinct) == len(keys)


def test_essential_graphs_pass_their_own_characterization():
    for d in enumerate_dags(4):
        assert is_essential_graph(essential_graph_of_dag(d))


def test_essential_graph_counts():
    for n, want in ESSENTIAL_COUNTS.items():
        egs = enumerate_essential_graphs(n)
        assert len(egs) == want
        # the filter and the classification sweep agree on the class count
        from_dags = {essential_graph_of_dag(d).key() for d in enumerate_dags(n)}
        assert {p.key() for p in egs} == from_dags


def test_dag_counts():
    for n, want in DAG_COUNTS.items():
        assert len(enumerate_dags(n)) == want


def test_class_sizes_partition_dags():
    for n in (3, 4):
        total = sum(class_size(p) for p in enumerate_essential_graphs(n))
        assert total == DAG_COUNTS[n]


def test_class_size_matches_brute_class():
    picks = [
        Dag(4, [(0, 1), (1, 2), (2, 3)]),
        Dag(4, [(0, 2), (1, 2), (2, 3)]),
        Dag(4, [(0, 1), (0, 2), (1, 2), (1, 3)]),
    ]
    for d in picks:
        assert class_size(essential_graph_of_dag(d)) == len(mec_of_dag(d))


def test_classification_sweep_shape():
    rows = classification_sweep(3)
    assert len(rows) == DAG_COUNTS[3]
    assert [r[0] for r in rows] == list(range(DAG_COUNTS[3]))
    ids = {r[1] for r in rows}
    assert ids == set(range(ESSENTIAL_COUNTS[3]))
    assert sum({r[1]: r[2] for r in rows}.values()) == DAG_COUNTS[3]


@settings(deadline=None, max_examples=100)
@given(small_dags(max_n=5))
def test_essential_graph_skeleton_preserved(d):
    eg = essential_graph_of_dag(d)
    kept = {edge_key(u, v) for u, v in eg.arcs} | set(eg.lines)
    assert kept == set(skeleton(d).edges)
    assert is_essential_graph(eg)
