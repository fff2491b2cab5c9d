"""Markov equivalence and essential graphs (CPDAGs).

Two DAGs are Markov equivalent iff they share skeleton and immoralities.
The essential graph of a class keeps an arc exactly where every member
orients the edge the same way.  A partially directed graph is an essential
graph iff it has no partially directed cycle, its undirected part is chordal,
no induced subgraph a -> b - c has a, c nonadjacent, and every arc is
strongly protected.
"""

from __future__ import annotations

import itertools

from . import amo as amo_mod
from .graphs import (
    CapExceededError,
    Dag,
    Pdag,
    UndirectedGraph,
    edge_key,
    has_partially_directed_cycle,
    immoralities,
    is_acyclic,
    is_chordal,
    skeleton,
)

MEC_ENUM_CAP = 1 << 22


def markov_equivalent(d1, d2):
    if d1.n != d2.n:
        return False
    return skeleton(d1) == skeleton(d2) and immoralities(d1) == immoralities(d2)


def mec_of_dag(d, cap=MEC_ENUM_CAP):
    """All DAGs Markov equivalent to ``d``, by brute-force reorientation.

    Enumerates the 2^m orientations of the skeleton and keeps the acyclic
    ones with the same immoralities.  This is the reference oracle; use
    ``class_size`` for counting.
    """
    edges = sorted(skeleton(d).edges)
    if 2 ** len(edges) > cap:
        raise CapExceededError(f"2^{len(edges)} orientations exceed cap {cap}")
    target = immoralities(d)
    out = []
    for bits in itertools.product((0, 1), repeat=len(edges)):
        arcs = [(u, v) if b else (v, u) for (u, v), b in zip(edges, bits)]
        if not is_acyclic(d.n, arcs):
            continue
        cand = Dag(d.n, arcs)
        if immoralities(cand) == target:
            out.append(cand)
    return out


def is_strongly_protected(p, arc):
    """Whether the arc u->v sits in one of the four protecting configurations:

    (a) w->u->v with w, v nonadjacent;
    (b) u->v<-w with u, w nonadjacent;
    (c) some w with u->w->v alongside u->v;
    (d) undirected neighbors w1-u, w2-u with w1->v, w2->v, w1, w2 nonadjacent.
    """
    u, v = arc
    if (u, v) not in p.arcs:
        raise ValueError(f"{arc} is not an arc of the graph")
    for w in p.parents[u]:
        if w != v and not p.adjacent(w, v):
            return True  # (a)
    for w in p.parents[v]:
        if w != u and not p.adjacent(w, u):
            return True  # (b)
    for w in p.children[u]:
        if w != v and (w, v) in p.arcs:
            return True  # (c)
    candidates = [
        w for w in p.undirected_neighbors[u] if (w, v) in p.arcs
    ]
    for w1, w2 in itertools.combinations(sorted(candidates), 2):
        if not p.adjacent(w1, w2):
            return True  # (d)
    return False


def protected_directed_only(d, arc):
    """Parent-set test for fully directed graphs: u->v is protected iff
    parents(u) != parents(v) - {u}."""
    u, v = arc
    if (u, v) not in d.arcs:
        raise ValueError(f"{arc} is not an arc of the graph")
    return d.parents[u] != d.parents[v] - {u}


def essential_graph_of_dag(d):
    """Essential graph via fixed-point undirection of unprotected arcs.

    Repeatedly undirects the lexicographically smallest arc that is not
    strongly protected; the fixed point is the essential graph of the class.
    """
    arcs = set(d.arcs)
    lines = set()
    while True:
        p = Pdag(d.n, arcs, lines)
        weak = None
        for arc in sorted(arcs):
            if not is_strongly_protected(p, arc):
                weak = arc
                break
        if weak is None:
            return p
        arcs.remove(weak)
        lines.add(edge_key(*weak))


def essential_graph_by_intersection(d, cap=MEC_ENUM_CAP):
    """Reference semantics: arcs oriented identically across the whole class."""
    members = mec_of_dag(d, cap=cap)
    common = frozenset.intersection(*(m.arcs for m in members))
    lines = {
        edge_key(u, v)
        for u, v in skeleton(d).edges
        if (u, v) not in common and (v, u) not in common
    }
    return Pdag(d.n, common, lines)


def is_essential_graph(p):
    """The four-condition characterization of essential graphs."""
    if has_partially_directed_cycle(p):
        return False
    if not is_chordal(p.undirected_part()):
        return False
    # no induced a -> b - c with a, c nonadjacent
    for a, b in p.arcs:
        for c in p.undirected_neighbors[b]:
            if c != a and not p.adjacent(a, c):
                return False
    return all(is_strongly_protected(p, arc) for arc in p.arcs)


def class_size(p):
    """Number of DAGs in the class of an essential graph: the product over
    undirected components of their AMO counts."""
    und = p.undirected_part()
    total = 1
    for comp in und.connected_components():
        if len(comp) == 1:
            continue
        sub_edges = [
            (u, v) for u, v in und.edges if u in set(comp) and v in set(comp)
        ]
        relabel = {v: i for i, v in enumerate(comp)}
        sub = UndirectedGraph(
            len(comp), ((relabel[u], relabel[v]) for u, v in sub_edges)
        )
        total *= amo_mod.count_amos(sub)
    return total


def enumerate_essential_graphs(n, cap=MEC_ENUM_CAP):
    """All essential graphs on n vertices, by filtering every Pdag.

    Each vertex pair independently carries nothing, a line, or an arc either
    way; 4^(n choose 2) candidates, so desk scale only.
    """
    pairs = list(itertools.combinations(range(n), 2))
    if 4 ** len(pairs) > cap:
        raise CapExceededError(f"4^{len(pairs)} candidates exceed cap {cap}")
    out = []
    for choice in itertools.product(range(4), repeat=len(pairs)):
        arcs, lines = [], []
        for (u, v), c in zip(pairs, choice):
            if c == 1:
                lines.append((u, v))
            elif c == 2:
                arcs.append((u, v))
            elif c == 3:
                arcs.append((v, u))
        cand = Pdag(n, arcs, lines)
        if not is_acyclic(n, cand.arcs):
            continue
        if is_essential_graph(cand):
            out.append(cand)
    out.sort(key=lambda p: p.key())
    return out


def enumerate_dags(n):
    """All labeled DAGs on n vertices (3^(n choose 2) candidates filtered)."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for choice in itertools.product(range(3), repeat=len(pairs)):
        arcs = []
        for (u, v), c in zip(pairs, choice):
            if c == 1:
                arcs.append((u, v))
            elif c == 2:
                arcs.append((v, u))
        if is_acyclic(n, arcs):
            out.append(Dag(n, arcs))
    return out


def classification_sweep(n):
    """Rows (dag_id, essential_graph_id, class_size) over all DAGs on n vertices.

    DAGs are numbered in enumeration order; essential graphs are numbered by
    first appearance.
    """
    eg_ids = {}
    rows = []
    for dag_id, d in enumerate(enumerate_dags(n)):
        eg = essential_graph_of_dag(d)
        key = eg.key()
        if key not in eg_ids:
            eg_ids[key] = (len(eg_ids), class_size(eg))
        eg_id, size = eg_ids[key]
        rows.append((dag_id, eg_id, size))
    return rows
