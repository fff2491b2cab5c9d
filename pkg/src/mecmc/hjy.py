"""A reversible move chain on essential graphs.

States are essential graphs on a fixed vertex count.  A step proposes one of
six move kinds (insert/delete arc, insert/delete line, make/remove
immorality) with a uniformly chosen vertex tuple and accepts when the edited
graph is itself an essential graph; equivalently, repairing the edit to the
essential graph of one of its consistent extensions changes nothing.
Accepting a repair that moves other edges would break reversibility: from
the immorality 0->1<-2, deleting 2->1 repairs to the line 0-1, but
reinserting 2->1 there repairs to the undirected path, so the reverse move
is rejected and detailed balance fails.  Restricted to edits that are
already essential, insert and delete of the same tuple are exact inverses
proposed with equal probability, the kernel is symmetric, and the uniform
law is stationary.  ``emptying_sequence`` realizes the constructive walk
from any essential graph down to the empty graph, which shows the chain is
connected, and every one of its moves is accepted under this rule.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .essential import essential_graph_of_dag, is_essential_graph
from .graphs import Dag, Pdag, edge_key, format_pdag, perfect_elimination_ordering
from .posets import poset_stats, reachability_poset

MOVE_KINDS = (
    "insert-arc",
    "delete-arc",
    "insert-line",
    "delete-line",
    "make-immorality",
    "remove-immorality",
)


@dataclass(frozen=True)
class Move:
    kind: str
    vertices: tuple

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        want = 3 if "immorality" in self.kind else 2
        if len(self.vertices) != want:
            raise ValueError(f"{self.kind} takes {want} vertices")


def state_hash(p):
    """Stable short digest of the canonical text form."""
    return hashlib.sha256(format_pdag(p).encode()).hexdigest()[:12]


def consistent_extension(p):
    """Orient the lines of a Pdag into a DAG without new immoralities.

    Dor-Tarsi: repeatedly find a vertex with no outgoing arcs whose
    undirected neighbors are adjacent to all its other neighbors, point its
    lines inward, and retire it.  Returns None when no extension exists.
    All consistent extensions of a Pdag are Markov equivalent, so callers may
    treat the result as canonical.
    """
    remaining = set(range(p.n))
    arcs_out = {v: set(p.children[v]) for v in range(p.n)}
    arcs_in = {v: set(p.parents[v]) for v in range(p.n)}
    lines = {v: set(p.undirected_neighbors[v]) for v in range(p.n)}
    result = set(p.arcs)
    while remaining:
        chosen = None
        for x in sorted(remaining):
            if arcs_out[x]:
                continue
            adj_x = arcs_in[x] | lines[x]
            ok = True
            for w in lines[x]:
                others = adj_x - {w}
                if any(
                    not (
                        z in lines[w] or z in arcs_in[w] or z in arcs_out[w]
                    )
                    for z in others
                ):
                    ok = False
                    break
            if ok:
                chosen = x
                break
        if chosen is None:
            return None
        x = chosen
        for w in lines[x]:
            result.add((w, x))
            lines[w].discard(x)
        for w in arcs_in[x]:
            arcs_out[w].discard(x)
        remaining.discard(x)
        arcs_out.pop(x)
        arcs_in.pop(x)
        lines.pop(x)
        for v in remaining:
            arcs_in[v].discard(x)
            lines[v].discard(x)
    return Dag(p.n, result)


@lru_cache(maxsize=200_000)
def _repair(p):
    """Essential graph of the modified Pdag, or None when it has no extension."""
    ext = consistent_extension(p)
    if ext is None:
        return None
    return essential_graph_of_dag(ext)


def apply_move(state, move):
    """Apply one chain move to an essential graph.

    Returns the new state, or None when the move is rejected: a precondition
    fails, the edited graph has no consistent extension, or repairing to the
    essential graph of that extension would change anything beyond the edit
    itself.  The last rule subsumes the edge-keeps-its-type conditions and is
    what makes the kernel symmetric.
    """
    kind = move.kind
    arcs = set(state.arcs)
    lines = set(state.lines)
    if kind in ("insert-arc", "delete-arc", "insert-line", "delete-line"):
        u, v = move.vertices
        if u == v:
            return None
        if kind == "insert-arc":
            if state.adjacent(u, v):
                return None
            arcs.add((u, v))
        elif kind == "delete-arc":
            if (u, v) not in arcs:
                return None
            arcs.remove((u, v))
        elif kind == "insert-line":
            if state.adjacent(u, v):
                return None
            lines.add(edge_key(u, v))
        else:
            if edge_key(u, v) not in lines:
                return None
            lines.remove(edge_key(u, v))
    else:
        a, b, c = move.vertices
        if len({a, b, c}) != 3 or state.adjacent(a, c):
            return None
        if kind == "make-immorality":
            if edge_key(a, b) not in lines or edge_key(b, c) not in lines:
                return None
            lines -= {edge_key(a, b), edge_key(b, c)}
            arcs |= {(a, b), (c, b)}
        else:
            if (a, b) not in arcs or (c, b) not in arcs:
                return None
            arcs -= {(a, b), (c, b)}
            lines |= {edge_key(a, b), edge_key(b, c)}
    edited = Pdag(state.n, arcs, lines)
    repaired = _repair(edited)
    if repaired is None or repaired != edited:
        return None
    return repaired


def propose(n, rng):
    """Draw a uniformly random move: kind first, then a uniform tuple.

    Returns None when the drawn kind has no valid tuple (immorality kinds
    need three vertices, edge kinds two); the step counts as a rejection.
    """
    kind = MOVE_KINDS[int(rng.integers(6))]
    if n < (3 if "immorality" in kind else 2):
        return None
    if "immorality" in kind:
        b = int(rng.integers(n))
        rest = [v for v in range(n) if v != b]
        i = int(rng.integers(len(rest)))
        j = int(rng.integers(len(rest) - 1))
        a = rest[i]
        c = [v for v in rest if v != a][j]
        a, c = min(a, c), max(a, c)
        return Move(kind, (a, b, c))
    u = int(rng.integers(n))
    v = [x for x in range(n) if x != u][int(rng.integers(n - 1))]
    if "line" in kind:
        u, v = min(u, v), max(u, v)
    return Move(kind, (u, v))


def step(state, rng):
    """One lazy chain step; stays at ``state`` when the proposal is rejected."""
    move = propose(state.n, rng)
    if move is None:
        return state, move, False
    result = apply_move(state, move)
    if result is None:
        return state, move, False
    return result, move, True


def legal_moves(state):
    """All (move, result) pairs with a precondition-satisfying tuple that are
    accepted from ``state``."""
    n = state.n
    out = []
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if not state.adjacent(u, v):
                for kind in ("insert-arc", "insert-line"):
                    if kind == "insert-line" and u > v:
                        continue
                    m = Move(kind, (u, v))
                    r = apply_move(state, m)
                    if r is not None:
                        out.append((m, r))
    for u, v in sorted(state.arcs):
        m = Move("delete-arc", (u, v))
        r = apply_move(state, m)
        if r is not None:
            out.append((m, r))
    for u, v in sorted(state.lines):
        m = Move("delete-line", (u, v))
        r = apply_move(state, m)
        if r is not None:
            out.append((m, r))
    for b in range(n):
        for a, c in itertools.combinations(sorted(state.undirected_neighbors[b]), 2):
            if not state.adjacent(a, c):
                m = Move("make-immorality", (a, b, c))
                r = apply_move(state, m)
                if r is not None:
                    out.append((m, r))
        for a, c in itertools.combinations(sorted(state.parents[b]), 2):
            if not state.adjacent(a, c):
                m = Move("remove-immorality", (a, b, c))
                r = apply_move(state, m)
                if r is not None:
                    out.append((m, r))
    return out


def exact_kernel(states):
    """Exact transition matrix of the chain over the given state list.

    Entries are rationals; each of the six kinds carries weight 1/6 split
    uniformly over its tuple domain (ordered pairs for arc kinds, unordered
    pairs for line kinds, middle-plus-unordered-outer triples for immorality
    kinds).  Raises when an accepted move leaves the supplied state list.
    """
    n = states[0].n
    index = {s.key(): i for i, s in enumerate(states)}
    pair_w = Fraction(1, 6 * n * (n - 1))
    line_w = Fraction(1, 6 * (n * (n - 1) // 2))
    # at n = 2 the triple domain is empty and legal_moves never yields an
    # immorality move, so that kind's 1/6 stays on the diagonal
    tri_dom = n * (n - 1) * (n - 2) // 2
    tri_w = Fraction(1, 6 * tri_dom) if tri_dom else None
    K = [[Fraction(0) for _ in states] for _ in states]
    for i, s in enumerate(states):
        stay = Fraction(1)
        for move, result in legal_moves(s):
            if "immorality" in move.kind:
                w = tri_w
            elif "line" in move.kind:
                w = line_w
            else:
                w = pair_w
            j = index.get(result.key())
            if j is None:
                raise ValueError(f"move {move} leaves the state list")
            K[i][j] += w
            stay -= w
        K[i][i] += stay
    return K


def hamming_distance(p1, p2):
    """Number of vertex pairs whose edge mark differs."""
    if p1.n != p2.n:
        raise ValueError("graphs must share a vertex count")

    def mark(p, u, v):
        if edge_key(u, v) in p.lines:
            return "line"
        if (u, v) in p.arcs:
            return ">"
        if (v, u) in p.arcs:
            return "<"
        return None

    return sum(
        1
        for u, v in itertools.combinations(range(p1.n), 2)
        if mark(p1, u, v) != mark(p2, u, v)
    )


def two_step_path(e1, e2):
    """Moves (at most two) joining essential graphs at Hamming distance one.

    A pair differing by edge presence is joined by a single insert or delete;
    a pair differing by arc direction is joined by deleting the arc and
    reinserting it reversed.  Each returned move is verified by application.
    """
    if hamming_distance(e1, e2) != 1:
        raise ValueError("graphs must be at Hamming distance 1")
    diff = None
    for u, v in itertools.combinations(range(e1.n), 2):
        m1 = _mark(e1, u, v)
        m2 = _mark(e2, u, v)
        if m1 != m2:
            diff = (u, v, m1, m2)
            break
    u, v, m1, m2 = diff
    if m1 is None or m2 is None:
        present = m2 if m1 is None else m1
        if present == "line":
            mv = Move("insert-line", (u, v))
        elif present == ">":
            mv = Move("insert-arc", (u, v))
        else:
            mv = Move("insert-arc", (v, u))
        moves = [mv] if m1 is None else [_inverse(mv)]
    elif {m1, m2} == {">", "<"}:
        first = (u, v) if m1 == ">" else (v, u)
        second = (v, u) if m1 == ">" else (u, v)
        moves = [Move("delete-arc", first), Move("insert-arc", second)]
    else:
        raise ValueError(
            "an arc cannot face a line at Hamming distance 1 between "
            "essential graphs"
        )
    state = e1
    for mv in moves:
        state = apply_move(state, mv)
        if state is None:
            raise ValueError(f"joining move {mv} was rejected")
    if state != e2:
        raise ValueError("joining moves did not reach the target")
    return moves


def _mark(p, u, v):
    if edge_key(u, v) in p.lines:
        return "line"
    if (u, v) in p.arcs:
        return ">"
    if (v, u) in p.arcs:
        return "<"
    return None


def _inverse(move):
    swap = {
        "insert-arc": "delete-arc",
        "delete-arc": "insert-arc",
        "insert-line": "delete-line",
        "delete-line": "insert-line",
        "make-immorality": "remove-immorality",
        "remove-immorality": "make-immorality",
    }
    return Move(swap[move.kind], move.vertices)


def reachable_within(state, depth):
    """Canonical keys of states within ``depth`` accepted moves."""
    seen = {state.key(): state}
    frontier = [state]
    for _ in range(depth):
        nxt = []
        for s in frontier:
            for _, r in legal_moves(s):
                if r.key() not in seen:
                    seen[r.key()] = r
                    nxt.append(r)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# constructive emptying


def emptying_sequence(eg):
    """Chain moves taking an essential graph to the empty graph.

    Three stages: delete lines following a perfect elimination ordering of
    each chain component; dismantle incoming arcs of maximal vertices of
    poset height >= 3 (non-cover parents first; with several covers keep the
    highest for last, with one cover clear the shared parents first); finally
    prune each remaining collider to two arcs, convert it to lines, and
    delete them.  Every intermediate state must be essential; a violation
    raises.
    """
    moves = []
    state = eg

    def play(move):
        nonlocal state
        result = apply_move(state, move)
        if result is None:
            raise ValueError(f"emptying move {move} was rejected at {state!r}")
        expected = _expected_after(state, move)
        if result != expected:
            raise ValueError(
                f"emptying move {move} repaired to a different graph"
            )
        if not is_essential_graph(result):
            raise ValueError(f"intermediate after {move} is not essential")
        state = result
        moves.append(move)

    # stage 1: undirected edges, simplicial vertices first
    und = state.undirected_part()
    peo = perfect_elimination_ordering(und)
    eliminated = set()
    for v in peo:
        for w in sorted(und.adj[v]):
            if w not in eliminated:
                play(Move("delete-line", edge_key(v, w)))
        eliminated.add(v)

    # stage 2: maximal vertices of height >= 3
    while True:
        dag = Dag(state.n, state.arcs)
        poset = reachability_poset(dag)
        stats = poset_stats(poset)
        target = None
        for v in range(state.n):
            if dag.parents[v] and not dag.children[v] and stats.heights[v] >= 3:
                target = v
                break
        if target is None:
            break
        v = target
        covers = poset.covers(v)
        heights = stats.heights
        if len(covers) >= 2:
            keep_last = max(covers, key=lambda w: (heights[w], w))
            rest = sorted(
                (w for w in covers if w != keep_last),
                key=lambda w: (heights[w], w),
            )
            keep_second = rest[-1]
            for x in sorted(dag.parents[v] - set(covers)):
                play(Move("delete-arc", (x, v)))
            for w in rest[:-1]:
                play(Move("delete-arc", (w, v)))
            play(Move("delete-arc", (keep_second, v)))
            play(Move("delete-arc", (keep_last, v)))
        else:
            (w,) = covers
            common = sorted((dag.parents[v] - {w}) & dag.parents[w])
            others = sorted(dag.parents[v] - {w} - set(common))
            for x in common:
                play(Move("delete-arc", (x, v)))
            for x in others:
                play(Move("delete-arc", (x, v)))
            play(Move("delete-arc", (w, v)))

    # stage 3: colliders of height two
    dag = Dag(state.n, state.arcs)
    for b in range(state.n):
        parents = sorted(dag.parents[b])
        if not parents:
            continue
        for x in parents[:-2]:
            play(Move("delete-arc", (x, b)))
        a, c = parents[-2], parents[-1]
        play(Move("remove-immorality", (a, b, c)))
        play(Move("delete-line", edge_key(a, b)))
        play(Move("delete-line", edge_key(b, c)))

    if state.arcs or state.lines:
        raise ValueError("emptying did not reach the empty graph")
    return moves


def _expected_after(state, move):
    """The literal edit of a move, before repair; emptying moves must match."""
    arcs = set(state.arcs)
    lines = set(state.lines)
    kind = move.kind
    if kind == "delete-line":
        lines.discard(edge_key(*move.vertices))
    elif kind == "delete-arc":
        arcs.discard(tuple(move.vertices))
    elif kind == "remove-immorality":
        a, b, c = move.vertices
        arcs -= {(a, b), (c, b)}
        lines |= {edge_key(a, b), edge_key(b, c)}
    elif kind == "insert-arc":
        arcs.add(tuple(move.vertices))
    elif kind == "insert-line":
        lines.add(edge_key(*move.vertices))
    else:
        a, b, c = move.vertices
        lines -= {edge_key(a, b), edge_key(b, c)}
        arcs |= {(a, b), (c, b)}
    return Pdag(state.n, arcs, lines)


# ---------------------------------------------------------------------------
# the long-path counterexample family


def counterexample_graph(k, chord_ab=True, chord_cd=False):
    """One member of the family on 5k+4 vertices and 12k+5 edges.

    Hubs a, b, c, d = 0..3 carry the undirected cycle a-c-b-d-a plus the
    chosen chord(s).  Four independent k-sets attach by lines to the four
    cycle-adjacent hub pairs; a fifth receives arcs from all four hubs, so
    each such arc is protected by the hub pair that the chord leaves
    nonadjacent ((b) across the diagonal, (d) through the lines).
    """
    if k < 1:
        raise ValueError("k must be positive")
    a, b, c, d = 0, 1, 2, 3
    lines = {edge_key(a, c), edge_key(c, b), edge_key(b, d), edge_key(d, a)}
    if chord_ab:
        lines.add(edge_key(a, b))
    if chord_cd:
        lines.add(edge_key(c, d))
    hub_pairs = [(a, c), (c, b), (b, d), (d, a)]
    base = 4
    for pair in hub_pairs:
        for i in range(k):
            x = base + i
            lines.add(edge_key(x, pair[0]))
            lines.add(edge_key(x, pair[1]))
        base += k
    arcs = set()
    for i in range(k):
        x = base + i
        for h in (a, b, c, d):
            arcs.add((h, x))
    return Pdag(5 * k + 4, arcs, lines)


def counterexample_family(k):
    """The pair of essential graphs at Hamming distance two that no short
    move path joins: identical except that one has the a-b chord, the other
    the c-d chord."""
    return (
        counterexample_graph(k, chord_ab=True, chord_cd=False),
        counterexample_graph(k, chord_ab=False, chord_cd=True),
    )
