"""Graph containers and the chordal-graph machinery shared across the package.

Vertices are integers 0..n-1 throughout.  Undirected edges are stored as
sorted pairs, arcs as ordered pairs.  All containers are immutable after
construction so they can be hashed and used as chain states.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field


class NotChordalError(ValueError):
    """Raised when an operation requires chordality; carries a witness cycle."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        msg = "graph is not chordal; chordless cycle " + "-".join(map(str, self.cycle))
        super().__init__(msg)


class CapExceededError(RuntimeError):
    """An enumeration would exceed the configured state cap."""


def _check_vertex(v, n):
    if not isinstance(v, int) or not 0 <= v < n:
        raise ValueError(f"vertex {v!r} out of range for n={n}")


def edge_key(u, v):
    """Sorted vertex pair used as the canonical undirected edge."""
    if u == v:
        raise ValueError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


class UndirectedGraph:
    """A simple undirected graph with a fixed vertex count."""

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        norm = set()
        for u, v in edges:
            _check_vertex(u, n)
            _check_vertex(v, n)
            norm.add(edge_key(u, v))
        self.edges = frozenset(norm)
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(s) for s in adj)

    def has_edge(self, u, v):
        return u != v and edge_key(u, v) in self.edges

    def neighbors(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    @property
    def num_edges(self):
        return len(self.edges)

    def vertices(self):
        return range(self.n)

    def connected_components(self):
        """Vertex sets of the connected components, each sorted."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self):
        return self.n <= 1 or len(self.connected_components()) == 1

    def __eq__(self, other):
        return (
            isinstance(other, UndirectedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, m={len(self.edges)})"


class Dag:
    """A directed acyclic graph; construction rejects cycles and 2-cycles."""

    def __init__(self, n, arcs=()):
        self.n = n
        norm = set()
        for u, v in arcs:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if (v, u) in norm:
                raise ValueError(f"arcs in both directions between {u} and {v}")
            norm.add((u, v))
        self.arcs = frozenset(norm)
        if not is_acyclic(n, self.arcs):
            raise ValueError("arc set contains a directed cycle")
        par = [set() for _ in range(n)]
        chi = [set() for _ in range(n)]
        for u, v in self.arcs:
            par[v].add(u)
            chi[u].add(v)
        self.parents = tuple(frozenset(s) for s in par)
        self.children = tuple(frozenset(s) for s in chi)

    def topological_order(self):
        indeg = [len(self.parents[v]) for v in range(self.n)]
        ready = deque(sorted(v for v in range(self.n) if indeg[v] == 0))
        order = []
        while ready:
            v = ready.popleft()
            order.append(v)
            for w in sorted(self.children[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return order

    def __eq__(self, other):
        return isinstance(other, Dag) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Dag(n={self.n}, arcs={sorted(self.arcs)!r})"


class Pdag:
    """A partially directed graph: a set of arcs plus a set of lines."""

    def __init__(self, n, arcs=(), lines=()):
        self.n = n
        arc_set = set()
        for u, v in arcs:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if (v, u) in arc_set:
                raise ValueError(f"arcs in both directions between {u} and {v}")
            arc_set.add((u, v))
        line_set = set()
        for u, v in lines:
            _check_vertex(u, n)
            _check_vertex(v, n)
            line_set.add(edge_key(u, v))
        self.arcs = frozenset(arc_set)
        self.lines = frozenset(line_set)
        for u, v in self.arcs:
            if edge_key(u, v) in self.lines:
                raise ValueError(f"pair {u},{v} is both an arc and a line")
        par = [set() for _ in range(n)]
        chi = [set() for _ in range(n)]
        for u, v in self.arcs:
            par[v].add(u)
            chi[u].add(v)
        und = [set() for _ in range(n)]
        for u, v in self.lines:
            und[u].add(v)
            und[v].add(u)
        self.parents = tuple(frozenset(s) for s in par)
        self.children = tuple(frozenset(s) for s in chi)
        self.undirected_neighbors = tuple(frozenset(s) for s in und)

    @classmethod
    def from_dag(cls, d):
        return cls(d.n, d.arcs)

    def adjacent(self, u, v):
        return (
            edge_key(u, v) in self.lines or (u, v) in self.arcs or (v, u) in self.arcs
        )

    def skeleton(self):
        pairs = set(self.lines)
        pairs.update(edge_key(u, v) for u, v in self.arcs)
        return UndirectedGraph(self.n, pairs)

    def undirected_part(self):
        return UndirectedGraph(self.n, self.lines)

    def key(self):
        """Canonical hashable form (sorted arcs, sorted lines)."""
        return (self.n, tuple(sorted(self.arcs)), tuple(sorted(self.lines)))

    def __eq__(self, other):
        return isinstance(other, Pdag) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f"Pdag(n={self.n}, arcs={sorted(self.arcs)!r}, "
            f"lines={sorted(self.lines)!r})"
        )


def is_acyclic(n, arcs):
    """Kahn's algorithm on a candidate arc set."""
    indeg = [0] * n
    children = [[] for _ in range(n)]
    for u, v in arcs:
        indeg[v] += 1
        children[u].append(v)
    ready = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in children[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == n


def skeleton(d):
    return UndirectedGraph(d.n, (edge_key(u, v) for u, v in d.arcs))


def immoralities(d):
    """Triples (a, b, c) with a->c<-b, a < b, and a, b nonadjacent."""
    adj = [set() for _ in range(d.n)]
    for u, v in d.arcs:
        adj[u].add(v)
        adj[v].add(u)
    out = set()
    for c in range(d.n):
        for a, b in itertools.combinations(sorted(d.parents[c]), 2):
            if b not in adj[a]:
                out.add((a, b, c))
    return frozenset(out)


def maximum_cardinality_search(g, start=0):
    """MCS visit order; its reverse is a perfect elimination ordering iff chordal."""
    if g.n == 0:
        return []
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    current = start
    for _ in range(g.n):
        if current is None:
            best = max(
                (w, -v) for v, w in enumerate(weight) if not visited[v]
            )
            current = -best[1]
        visited[current] = True
        order.append(current)
        for w in g.adj[current]:
            if not visited[w]:
                weight[w] += 1
        current = None
    return order


def perfect_elimination_ordering(g):
    """A PEO (first vertex eliminated first) or None if the graph is not chordal."""
    order = maximum_cardinality_search(g)
    peo = list(reversed(order))
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        anchor = min(later, key=lambda w: pos[w])
        for w in later:
            if w != anchor and not g.has_edge(anchor, w):
                return None
    return peo


def is_chordal(g):
    return perfect_elimination_ordering(g) is not None


def find_chordless_cycle(g):
    """A chordless cycle of length >= 4, or None when the graph is chordal.

    Used for error messages: when the MCS ordering fails the elimination test
    at v with nonadjacent later neighbors x, y, a shortest x-y path avoiding
    N[v] closes into a chordless cycle through v.
    """
    order = maximum_cardinality_search(g)
    peo = list(reversed(order))
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        anchor = min(later, key=lambda w: pos[w])
        for w in later:
            if w == anchor or g.has_edge(anchor, w):
                continue
            banned = (set(g.adj[v]) | {v}) - {anchor, w}
            path = _shortest_path(g, anchor, w, banned)
            if path is not None:
                return [v] + path
    return None


def _shortest_path(g, s, t, banned):
    prev = {s: None}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return list(reversed(path))
        for y in sorted(g.adj[x]):
            if y not in prev and y not in banned:
                prev[y] = x
                queue.append(y)
    return None


def require_chordal(g):
    """Return a PEO or raise NotChordalError with a witness cycle."""
    peo = perfect_elimination_ordering(g)
    if peo is None:
        cycle = find_chordless_cycle(g)
        raise NotChordalError(cycle)
    return peo


def maximal_cliques(g):
    """Maximal cliques of a chordal graph, sorted lexicographically.

    Derived from a perfect elimination ordering: the candidate clique at v is
    v plus its later neighbors; non-maximal candidates are discarded.
    """
    peo = require_chordal(g)
    pos = {v: i for i, v in enumerate(peo)}
    cands = []
    for v in peo:
        c = frozenset({v} | {w for w in g.adj[v] if pos[w] > pos[v]})
        cands.append(c)
    cliques = [
        c for c in cands if not any(c < other for other in cands)
    ]
    return sorted(set(cliques), key=lambda c: tuple(sorted(c)))


@dataclass
class CliqueTree:
    """A clique tree with the running intersection property.

    ``dilations[i]`` is |D_i|: the product over the other cliques t_j of
    |t_j minus s_j|! where s_j is the clique preceding t_j on the tree path
    from t_i.  ``separator_sizes`` maps each tree edge to |t_i & t_j|.
    """

    n: int
    cliques: list
    edges: list
    separator_sizes: dict = field(default_factory=dict)
    dilations: list = field(default_factory=list)

    @property
    def num_cliques(self):
        return len(self.cliques)

    def tree_adjacency(self):
        adj = {i: set() for i in range(len(self.cliques))}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def degree(self):
        """Maximum degree of the tree (0 for a single clique)."""
        if not self.edges:
            return 0
        adj = self.tree_adjacency()
        return max(len(s) for s in adj.values())

    def diameter(self):
        """Longest path length (in edges) of the tree."""
        if not self.edges:
            return 0
        adj = self.tree_adjacency()

        def far(s):
            dist = {s: 0}
            q = deque([s])
            while q:
                x = q.popleft()
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        q.append(y)
            v = max(dist, key=lambda k: (dist[k], -k))
            return v, dist[v]

        a, _ = far(0)
        _, d = far(a)
        return d

    def max_clique_size(self):
        return max(len(c) for c in self.cliques)

    def path_predecessors(self, i):
        """For each clique j, the clique before j on the tree path from i."""
        adj = self.tree_adjacency()
        pred = {i: None}
        q = deque([i])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in pred:
                    pred[y] = x
                    q.append(y)
        return pred


def clique_tree(g):
    """Build a clique tree of a connected chordal graph.

    Uses a maximum-weight spanning tree over clique intersection sizes
    (Kruskal with lexicographic tie-breaking), which is guaranteed to have
    the running intersection property.
    """
    if not g.is_connected():
        raise ValueError("clique tree requires a connected graph")
    cliques = maximal_cliques(g)
    k = len(cliques)
    cand = []
    for i, j in itertools.combinations(range(k), 2):
        w = len(cliques[i] & cliques[j])
        if w > 0:
            cand.append((-w, i, j))
    cand.sort()
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for negw, i, j in cand:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
    if len(edges) != k - 1:
        raise ValueError("clique intersection graph is disconnected")
    tree = CliqueTree(n=g.n, cliques=cliques, edges=sorted(edges))
    for i, j in tree.edges:
        tree.separator_sizes[(i, j)] = len(cliques[i] & cliques[j])
    for i in range(k):
        pred = tree.path_predecessors(i)
        d = 1
        for j in range(k):
            if j == i:
                continue
            d *= math.factorial(len(cliques[j] - cliques[pred[j]]))
        tree.dilations.append(d)
    return tree


def has_partially_directed_cycle(p):
    """True when some cycle follows lines either way and at least one arc forward.

    Equivalent test: in the digraph with lines doubled in both directions,
    some arc's head reaches its tail back.
    """
    succ = [set() for _ in range(p.n)]
    for u, v in p.arcs:
        succ[u].add(v)
    for u, v in p.lines:
        succ[u].add(v)
        succ[v].add(u)
    for u, v in p.arcs:
        # BFS from v looking for u
        seen = {v}
        q = deque([v])
        found = False
        while q and not found:
            x = q.popleft()
            for y in succ[x]:
                if y == u:
                    found = True
                    break
                if y not in seen:
                    seen.add(y)
                    q.append(y)
        if found:
            return True
    return False


# ---------------------------------------------------------------------------
# small graph families used by tests, scripts, and the CLI examples


def complete_graph(n):
    return UndirectedGraph(n, itertools.combinations(range(n), 2))


def path_graph(n):
    return UndirectedGraph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(n):
    """A star on n vertices with center 0."""
    return UndirectedGraph(n, ((0, i) for i in range(1, n)))


def glued_clique_chain(sizes, overlaps):
    """A chain of cliques, consecutive ones sharing the stated vertex counts.

    ``glued_clique_chain([4, 4], [2])`` is two K_4 sharing two vertices.
    """
    if len(overlaps) != len(sizes) - 1:
        raise ValueError("need one overlap per consecutive clique pair")
    for s, t, o in zip(sizes, sizes[1:], overlaps):
        if not 0 < o < min(s, t):
            raise ValueError("overlaps must be strictly between 0 and both sizes")
    edges = set()
    start = 0
    prev_tail = []
    for size, ov in zip(sizes, list(overlaps) + [0]):
        fresh = list(range(start, start + size - len(prev_tail)))
        clique = prev_tail + fresh
        edges.update(itertools.combinations(sorted(clique), 2))
        start += len(fresh)
        prev_tail = clique[len(clique) - ov:] if ov else []
    return UndirectedGraph(start, edges)


# ---------------------------------------------------------------------------
# text format: "n <count>" header, then one edge per line ("u -- v" or "u -> v")


def parse_graph_text(text):
    """Parse the shared edge-list format into (n, lines, arcs)."""
    n = None
    lines = set()
    arcs = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = stripped.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <count>'")
            n = int(parts[1])
            if n < 0:
                raise ValueError(f"line {lineno}: negative vertex count")
            continue
        if len(parts) != 3 or parts[1] not in ("--", "->"):
            raise ValueError(f"line {lineno}: expected 'u -- v' or 'u -> v'")
        u, v = int(parts[0]), int(parts[2])
        if parts[1] == "--":
            lines.add(edge_key(u, v))
        else:
            arcs.add((u, v))
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return n, lines, arcs


def parse_pdag(text):
    n, lines, arcs = parse_graph_text(text)
    return Pdag(n, arcs, lines)


def parse_dag(text):
    n, lines, arcs = parse_graph_text(text)
    if lines:
        raise ValueError("expected a fully directed graph, found undirected edges")
    return Dag(n, arcs)


def parse_undirected(text):
    n, lines, arcs = parse_graph_text(text)
    if arcs:
        raise ValueError("expected an undirected graph, found arcs")
    return UndirectedGraph(n, lines)


def format_graph(n, lines=(), arcs=()):
    out = [f"n {n}"]
    for u, v in sorted(edge_key(a, b) for a, b in lines):
        out.append(f"{u} -- {v}")
    for u, v in sorted(arcs):
        out.append(f"{u} -> {v}")
    return "\n".join(out) + "\n"


def format_pdag(p):
    return format_graph(p.n, p.lines, p.arcs)


def format_dag(d):
    return format_graph(d.n, (), d.arcs)


def format_undirected(g):
    return format_graph(g.n, g.edges, ())
