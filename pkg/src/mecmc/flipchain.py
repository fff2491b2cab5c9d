"""The lazy edge-flip chain on AMOs and its spectral diagnostics.

One step of the chain picks one of the |E| base edges uniformly and reverses
it when the reversal is again an AMO, staying put otherwise.  The proposal is
symmetric, so the chain is reversible with uniform stationary distribution.
Alongside the exact spectrum this module carries the decomposition apparatus:
per-clique weights |t_i|! |D_i|, the projection chain on the clique tree, the
distinguished-path comparison bound, and the assembled Madras-Randall lower
bound on the spectral gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import amo as amo_mod
from .graphs import CapExceededError, clique_tree

DENSE_SPECTRUM_CAP = 10_000
SYMMETRY_TOL = 1e-12
EIGEN_TOL = 1e-9


class TransitionMatrix:
    """Dense row-stochastic matrix with the state labels of its chain."""

    def __init__(self, matrix, labels=None):
        P = np.asarray(matrix, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise ValueError("transition matrix must be square")
        if np.any(P < -SYMMETRY_TOL):
            raise ValueError("transition matrix has negative entries")
        rows = P.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > SYMMETRY_TOL:
            raise ValueError("rows must sum to 1 within 1e-12")
        self.matrix = P
        self.labels = labels

    @property
    def dimension(self):
        return self.matrix.shape[0]

    def is_symmetric(self):
        return bool(
            np.max(np.abs(self.matrix - self.matrix.T)) <= SYMMETRY_TOL
        )


def transition_matrix(space, cap=DENSE_SPECTRUM_CAP):
    """Exact transition matrix of the lazy edge-flip chain on ``space``."""
    N = space.size
    if cap is not None and N > cap:
        raise CapExceededError(f"{N} states exceed dense spectrum cap {cap}")
    m = space.graph.num_edges
    if m == 0:
        # edgeless graph: one empty orientation, the chain sits still
        return TransitionMatrix(np.eye(N), labels=[a.key() for a in space.states])
    P = np.zeros((N, N))
    for i, nbrs in enumerate(space.adjacency):
        for j in nbrs:
            P[i, j] = 1.0 / m
        P[i, i] = 1.0 - len(nbrs) / m
    return TransitionMatrix(P, labels=[a.key() for a in space.states])


def spectral_gap(tm):
    """1 - lambda_2 via a symmetric eigensolver; rejects asymmetric input.

    Dimension-1 chains have gap 1 by convention.
    """
    if not tm.is_symmetric():
        raise ValueError("spectral_gap expects a symmetric transition matrix")
    if tm.dimension == 1:
        return 1.0
    ev = np.linalg.eigvalsh(tm.matrix)
    return float(1.0 - ev[-2])


def step(a, rng):
    """One chain step from the Amo ``a``: propose a uniform edge, flip if legal."""
    edges = sorted(a.graph.edges)
    u, v = edges[int(rng.integers(len(edges)))]
    if (v, u) in a.arcs:
        u, v = v, u
    if a.parents[u] == a.parents[v] - {u}:
        return a.flip((u, v))
    return a


def sample(g, steps, rng, start=None):
    """Run the chain ``steps`` steps from the canonical PEO orientation."""
    a = start if start is not None else amo_mod.peo_orientation(g)
    for _ in range(steps):
        a = step(a, rng)
    return a


def move_table(space):
    """result[i, e] = state index after proposing edge e from state i."""
    m = space.graph.num_edges
    edges = sorted(space.graph.edges)
    table = np.empty((space.size, m), dtype=np.int64)
    for i, a in enumerate(space.states):
        for e, (u, v) in enumerate(edges):
            uu, vv = (u, v) if (u, v) in a.arcs else (v, u)
            if a.parents[uu] == a.parents[vv] - {uu}:
                table[i, e] = space.index[a.flip((uu, vv)).key()]
            else:
                table[i, e] = i
    return table


def sample_many(space, steps, count, rng, start_index=None):
    """Vectorized replicas of the chain; returns final state indices."""
    if start_index is None:
        start_index = space.index[amo_mod.peo_orientation(space.graph).key()]
    table = move_table(space)
    x = np.full(count, start_index, dtype=np.int64)
    m = space.graph.num_edges
    for _ in range(steps):
        x = table[x, rng.integers(0, m, size=count)]
    return x


def exact_distribution(tm, start, steps):
    """Distribution after ``steps`` steps from state ``start`` (matrix powers)."""
    mu = np.zeros(tm.dimension)
    mu[start] = 1.0
    for _ in range(steps):
        mu = mu @ tm.matrix
    return mu


def empirical_tv(space, steps, samples, rng, start_index=None):
    """Total variation distance between an empirical histogram and uniform."""
    final = sample_many(space, steps, samples, rng, start_index=start_index)
    counts = np.bincount(final, minlength=space.size)
    emp = counts / samples
    return float(0.5 * np.abs(emp - 1.0 / space.size).sum())


@dataclass
class BottleneckReport:
    phi: Fraction
    tmix_lower: Fraction
    subset_size: int
    boundary_edges: int


def bottleneck_ratio(space, subset):
    """Exact conductance of a subset under the uniform stationary law.

    Phi(R) = Q(R, R^c) / pi(R) with Q summed over flip edges leaving R; the
    companion mixing-time bound is t_mix(1/4) >= 1/(4 Phi).
    """
    R = set(subset)
    if not R or len(R) >= space.size:
        raise ValueError("subset must be a proper nonempty part of the space")
    if 2 * len(R) > space.size:
        raise ValueError("subset must have stationary mass at most 1/2")
    m = space.graph.num_edges
    crossing = sum(1 for i in R for j in space.adjacency[i] if j not in R)
    phi = Fraction(crossing, len(R) * m)
    if phi == 0:
        raise ValueError("subset is disconnected from its complement")
    return BottleneckReport(
        phi=phi,
        tmix_lower=Fraction(1, 4) / phi,
        subset_size=len(R),
        boundary_edges=crossing,
    )


def clique_cut_bottlenecks(space):
    """Conductance of each cut {states whose unique non-follower is t_i}.

    Returns a dict clique index -> BottleneckReport, skipping cuts that are
    empty or heavier than half the space.
    """
    out = {}
    for i in range(len(space.cliques)):
        cut = [
            v
            for v, s in enumerate(space.nonfollower_sets)
            if s == frozenset({i})
        ]
        if not cut or 2 * len(cut) > space.size:
            continue
        out[i] = bottleneck_ratio(space, cut)
    return out


def exact_tmix(tm, eps=0.25, max_steps=1 << 20):
    """Smallest t with max-over-starts TV(P^t(x, .), pi) <= eps.

    Computed from literal matrix powers (doubling, then bisection).  Returns
    None when the chain has not mixed within ``max_steps`` (e.g. periodic
    chains such as the single-edge graph).
    """
    N = tm.dimension
    if N == 1:
        return 0
    pi = np.full(N, 1.0 / N)

    def dist(A):
        return float(0.5 * np.max(np.abs(A - pi).sum(axis=1)))

    P = tm.matrix
    if dist(P) <= eps:
        return 1 if dist(np.eye(N)) > eps else 0
    powers = [(1, P)]
    t, A = 1, P
    while dist(A) > eps:
        if 2 * t > max_steps:
            return None
        A = A @ A
        t *= 2
        powers.append((t, A))
    lo_t, lo_A = powers[-2]
    hi_t = t
    # invariant: dist at lo_t > eps >= dist at hi_t
    while hi_t - lo_t > 1:
        mid = (lo_t + hi_t) // 2
        M = lo_A.copy()
        k = mid - lo_t
        B = P
        while k:
            if k & 1:
                M = M @ B
            B = B @ B
            k >>= 1
        if dist(M) <= eps:
            hi_t = mid
        else:
            lo_t, lo_A = mid, M
    return hi_t


# ---------------------------------------------------------------------------
# clique-tree decomposition: weights, projection chain, and gap bounds


@dataclass
class DecompositionStats:
    """Quantities entering the decomposition bounds.

    ``clique_weights[i]`` is |t_i|! |D_i|, the size of the piece H_{t_i} x D_i;
    ``z`` is their sum; ``o_g`` = z / min over tree edges of |t_j & t_k|! |D_{j,k}|.
    ``theta`` defaults to the clique-tree degree; the Madras-Randall framework
    itself would use the maximum overlap count (see ``max_overlap_theta``).
    """

    o_g: Fraction
    theta: int
    diameter: int
    t_max: int
    z: int
    clique_weights: list
    min_separator_weight: int


def decomposition_stats(ct, theta=None):
    weights = [
        math.factorial(len(c)) * d for c, d in zip(ct.cliques, ct.dilations)
    ]
    z = sum(weights)
    if ct.edges:
        sep_weights = []
        for i, j in ct.edges:
            d_ij = (
                math.factorial(len(ct.cliques[i] - ct.cliques[j]))
                * ct.dilations[i]
            )
            sep_weights.append(
                math.factorial(ct.separator_sizes[(i, j)]) * d_ij
            )
        min_sep = min(sep_weights)
        o_g = Fraction(z, min_sep)
    else:
        min_sep = z
        o_g = Fraction(1)
    return DecompositionStats(
        o_g=o_g,
        theta=ct.degree() if theta is None else theta,
        diameter=ct.diameter(),
        t_max=ct.max_clique_size(),
        z=z,
        clique_weights=weights,
        min_separator_weight=min_sep,
    )


def max_overlap_theta(space):
    """The Madras-Randall Theta: most pieces any single orientation lies in."""
    return max(space.nonfollower_counts)


@dataclass
class ProjectionChain:
    """The projection of the flip chain onto cliques of the tree.

    P_T(t_i, t_j) = 1 / (theta * C(|t_i|, |t_i & t_j|)) on tree edges, with
    stationary weight pi(t_i) proportional to |t_i|! |D_i|.  All entries are
    exact rationals; detailed balance holds identically.
    """

    matrix: list
    pi: list
    cliques: list

    @property
    def size(self):
        return len(self.pi)

    def check_detailed_balance(self):
        for i in range(self.size):
            for j in range(self.size):
                if self.pi[i] * self.matrix[i][j] != self.pi[j] * self.matrix[j][i]:
                    return False
        return True

    def gap(self):
        """Exact-gap of the reversible chain via similarity symmetrization."""
        if self.size == 1:
            return 1.0
        P = np.array([[float(x) for x in row] for row in self.matrix])
        pi = np.array([float(x) for x in self.pi])
        d = np.sqrt(pi)
        S = (P * d[None, :]) / d[:, None]
        ev = np.linalg.eigvalsh((S + S.T) / 2)
        return float(1.0 - ev[-2])


def projection_chain(ct, theta=None):
    stats = decomposition_stats(ct, theta=theta)
    k = len(ct.cliques)
    th = stats.theta
    P = [[Fraction(0) for _ in range(k)] for _ in range(k)]
    for i, j in ct.edges:
        sep = ct.separator_sizes[(i, j)]
        P[i][j] = Fraction(1, th * math.comb(len(ct.cliques[i]), sep))
        P[j][i] = Fraction(1, th * math.comb(len(ct.cliques[j]), sep))
    for i in range(k):
        mass = sum(P[i][j] for j in range(k) if j != i)
        if mass > 1:
            raise ValueError(
                f"row mass {mass} exceeds 1 at clique {i}; theta too small"
            )
        P[i][i] = 1 - mass
    z = stats.z
    pi = [Fraction(w, z) for w in stats.clique_weights]
    return ProjectionChain(matrix=P, pi=pi, cliques=list(ct.cliques))


def comparison_bound(stats):
    """Lower bound 1/A on the projection-chain gap, A = o_G * theta * diam(T).

    The distinguished-path comparison against the complete chain gives
    Gap(P_T) >= 1/A; a single clique returns 1 by convention.
    """
    if stats.diameter == 0:
        return Fraction(1)
    return 1 / (stats.o_g * stats.theta * stats.diameter)


def restriction_gap(ct, n_vertices, num_edges, denominator="edges"):
    """Worst product-chain gap over the pieces H_{t_i} x D_i.

    Every factor clique of size m contributes an adjacent-transposition walk
    with gap 2(1 - cos(pi/m)) once rescaled by its move probability.  With
    ``denominator="edges"`` each specific transposition is proposed with
    probability 1/|E| (the rate the restricted flip chain actually uses);
    ``"vertices_minus_cliques"`` reproduces the looser normalization
    min_c w_c gamma_c = 2(1 - cos(pi/t_max)) / (|G| - |T|), which can exceed
    the true restriction gap.
    """
    t_max = ct.max_clique_size()
    if denominator == "edges":
        scale = num_edges
    elif denominator == "vertices_minus_cliques":
        scale = n_vertices - ct.num_cliques
        if scale <= 0:
            raise ValueError("needs |G| > |T|")
    else:
        raise ValueError(f"unknown denominator {denominator!r}")
    return 2.0 * (1.0 - math.cos(math.pi / t_max)) / scale


def madras_randall_bound(g, ct=None, theta=None, denominator="edges"):
    """Assembled lower bound on the spectral gap of the edge-flip chain:

        Gap >= (1/theta^2) * comparison_bound * restriction_gap.

    Requires at least two maximal cliques.  The default uses theta = deg(T)
    and the 1/|E| restriction normalization, which together stay below the
    exact gap on the validity suite; ``denominator="vertices_minus_cliques"``
    recovers the looser displayed constant instead.
    """
    if ct is None:
        ct = clique_tree(g)
    if ct.num_cliques < 2:
        raise ValueError("decomposition bound needs at least two maximal cliques")
    stats = decomposition_stats(ct, theta=theta)
    gamma = restriction_gap(ct, g.n, g.num_edges, denominator=denominator)
    return float(comparison_bound(stats)) * gamma / stats.theta**2
