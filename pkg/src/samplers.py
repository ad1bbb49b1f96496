"""Seed-set sampling strategies.

Ten strategies pick the labelled training nodes: uniform nodes, random
edges (nedges), snowball, and rankings by degree, PageRank and collective
influence in descending/ascending order, plus a high/low degree mix. Every
strategy returns exactly ``ceil(p * N)`` nodes. Rankings break ties by
ascending node id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable
import logging
import math

import numpy as np
import scipy.sparse as sp

from config import (
    DEFAULT_CI_RADIUS,
    DEFAULT_PAGERANK_DAMPING,
    DEFAULT_PAGERANK_TOL,
    PAGERANK_MAX_ITER,
    SAMPLER_METHODS,
)
from errors import InputError
from graph import AttributedGraph

logger = logging.getLogger(__name__)

# Scores closer than this rank as ties, so symmetric nodes fall back to id order
RANK_DECIMALS = 12


@dataclass(frozen=True)
class SamplerSpec:
    """How to draw one seed set."""

    method: str
    p: float
    rng_seed: int = 0
    ci_radius: int = DEFAULT_CI_RADIUS
    pagerank_damping: float = DEFAULT_PAGERANK_DAMPING
    pagerank_tol: float = DEFAULT_PAGERANK_TOL

    def __post_init__(self) -> None:
        if self.method not in SAMPLER_METHODS:
            raise InputError(f"unknown sampling method '{self.method}', expected one of {', '.join(SAMPLER_METHODS)}")
        if not 0.0 < self.p <= 1.0:
            raise InputError(f"sample fraction p must lie in (0, 1], got {self.p}")
        if self.ci_radius < 1:
            raise InputError(f"ci_radius must be >= 1, got {self.ci_radius}")
        if not 0.0 < self.pagerank_damping < 1.0:
            raise InputError(f"pagerank_damping must lie in (0, 1), got {self.pagerank_damping}")
        if self.pagerank_tol <= 0.0:
            raise InputError(f"pagerank_tol must be positive, got {self.pagerank_tol}")


@dataclass(frozen=True)
class SeedSet:
    """Training sample: the selected nodes and the spec that drew them."""

    node_ids: frozenset[int]
    spec: SamplerSpec
    order: tuple[int, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.node_ids)

    def __contains__(self, v: object) -> bool:
        return v in self.node_ids

    def sorted_ids(self) -> list[int]:
        return sorted(self.node_ids)

    def mask(self, n: int) -> np.ndarray:
        """Boolean membership array over ``n`` nodes."""
        member = np.zeros(n, dtype=bool)
        member[list(self.node_ids)] = True
        return member


def target_size(n: int, p: float) -> int:
    """Number of seeds for fraction ``p`` of ``n`` nodes, ``ceil(p * n)``.

    Raises:
        InputError: If the sample would be empty
    """
    scaled = round(p * n, 9)
    if scaled < 1:
        raise InputError(f"sample would be empty (p={p}, N={n})")
    return min(n, math.ceil(scaled))


# ===== SCORES =====


def pagerank(g: AttributedGraph, damping: float = DEFAULT_PAGERANK_DAMPING, tol: float = DEFAULT_PAGERANK_TOL) -> np.ndarray:
    """PageRank by power iteration on the undirected graph.

    Each edge acts as two directed arcs, teleportation is uniform and
    degree-0 nodes spread their mass uniformly. Iteration stops once the L1
    change drops below ``tol``.

    Args:
        g: Graph to score
        damping: Probability of following an arc
        tol: L1 convergence tolerance

    Returns:
        Score per node, summing to 1
    """
    n = g.node_count
    if n == 0:
        return np.zeros(0)

    adjacency = g.adjacency_matrix()
    degree = g.degrees().astype(np.float64)
    dangling = degree == 0
    inverse_degree = np.divide(1.0, degree, out=np.zeros(n), where=~dangling)

    x = np.full(n, 1.0 / n)
    for iteration in range(1, PAGERANK_MAX_ITER + 1):
        spread = adjacency @ (x * inverse_degree)
        x_next = damping * (spread + x[dangling].sum() / n) + (1.0 - damping) / n
        change = np.abs(x_next - x).sum()
        x = x_next
        if change < tol:
            break
    else:
        logger.warning(f"PageRank did not converge in {PAGERANK_MAX_ITER} iterations (last change {change:.3g})")

    return x / x.sum()


def collective_influence(g: AttributedGraph, radius: int = DEFAULT_CI_RADIUS) -> np.ndarray:
    """Collective influence of every node at ball radius ``radius``.

    ``CI(i) = (k_i - 1) * sum(k_j - 1)`` over nodes j at shortest-path
    distance exactly ``radius`` from i.

    Args:
        g: Graph to score
        radius: Ball radius (>= 1)

    Returns:
        Integer score per node
    """
    if radius < 1:
        raise InputError(f"radius must be >= 1, got {radius}")

    n = g.node_count
    adjacency = g.adjacency_matrix()
    reached = sp.identity(n, dtype=np.float64, format="csr")
    frontier = reached.copy()

    for _ in range(radius):
        candidates = (frontier @ adjacency).tocsr()
        candidates.data[:] = 1.0
        fresh = (candidates - candidates.multiply(reached)).tocsr()
        fresh.eliminate_zeros()
        reached = (reached + fresh).tocsr()
        frontier = fresh

    excess = g.degrees().astype(np.int64) - 1
    boundary = np.rint(frontier @ excess.astype(np.float64)).astype(np.int64)
    return excess * boundary


def rank_nodes(scores: np.ndarray, descending: bool) -> np.ndarray:
    """Order node ids by score, ties broken by ascending id."""
    ids = np.arange(scores.size)
    keyed = np.round(np.asarray(scores, dtype=np.float64), RANK_DECIMALS)
    primary = -keyed if descending else keyed
    return np.lexsort((ids, primary))


# ===== STRATEGIES =====


def sample(g: AttributedGraph, spec: SamplerSpec) -> SeedSet:
    """Draw a seed set from ``g`` as described by ``spec``.

    Args:
        g: Graph to sample from
        spec: Strategy, fraction and parameters

    Returns:
        Seed set of exactly ``ceil(p * N)`` nodes

    Raises:
        InputError: If N < 2 or the sample would be empty
    """
    n = g.node_count
    if n < 2:
        raise InputError(f"sampling needs at least 2 nodes, graph has {n}")

    wanted = target_size(n, spec.p)
    rng = np.random.default_rng(spec.rng_seed)
    picked = _STRATEGIES[spec.method](g, wanted, spec, rng)

    if len(picked) != wanted or len(set(picked)) != wanted:
        raise AssertionError(f"{spec.method} produced {len(set(picked))} nodes, expected {wanted}")

    logger.debug(f"Sampled {wanted} seeds with {spec.method} (p={spec.p})")
    return SeedSet(node_ids=frozenset(picked), spec=spec, order=tuple(picked))


def _sample_nodes(g: AttributedGraph, wanted: int, spec: SamplerSpec, rng: np.random.Generator) -> list[int]:
    return rng.choice(g.node_count, size=wanted, replace=False).tolist()


def _sample_nedges(g: AttributedGraph, wanted: int, spec: SamplerSpec, rng: np.random.Generator) -> list[int]:
    picked: list[int] = []
    seen: set[int] = set()

    for edge in rng.permutation(g.edge_count):
        for v in g.edges[edge].tolist():
            if v not in seen:
                seen.add(v)
                picked.append(v)
        if len(picked) >= wanted:
            return picked[:wanted]

    missing = wanted - len(picked)
    logger.warning(f"nedges ran out of edges, adding {missing} random node(s)")
    remaining = np.setdiff1d(np.arange(g.node_count), np.array(picked, dtype=np.int64))
    picked.extend(rng.choice(remaining, size=missing, replace=False).tolist())
    return picked


def _sample_snowball(g: AttributedGraph, wanted: int, spec: SamplerSpec, rng: np.random.Generator) -> list[int]:
    visited = np.zeros(g.node_count, dtype=bool)
    picked: list[int] = []

    while len(picked) < wanted:
        # (Re)start from a random unvisited node once a component is exhausted
        start = int(rng.choice(np.flatnonzero(~visited)))
        visited[start] = True
        picked.append(start)
        layer = [start]

        while layer and len(picked) < wanted:
            next_layer: list[int] = []
            for u in layer:
                for w in g.neighbor_array(u).tolist():
                    if not visited[w]:
                        visited[w] = True
                        next_layer.append(w)
            picked.extend(next_layer)
            layer = next_layer

    return picked[:wanted]


def _ranked(score: Callable[[AttributedGraph, SamplerSpec], np.ndarray], descending: bool):
    def strategy(g: AttributedGraph, wanted: int, spec: SamplerSpec, rng: np.random.Generator) -> list[int]:
        return rank_nodes(score(g, spec), descending)[:wanted].tolist()

    return strategy


def _sample_degree_mix(g: AttributedGraph, wanted: int, spec: SamplerSpec, rng: np.random.Generator) -> list[int]:
    degree = g.degrees()
    high = rank_nodes(degree, descending=True)[:math.ceil(wanted / 2)].tolist()
    chosen = set(high)
    low = [v for v in rank_nodes(degree, descending=False).tolist() if v not in chosen]
    return high + low[:wanted - len(high)]


def _degree_score(g: AttributedGraph, spec: SamplerSpec) -> np.ndarray:
    return g.degrees()


def _pagerank_score(g: AttributedGraph, spec: SamplerSpec) -> np.ndarray:
    return pagerank(g, spec.pagerank_damping, spec.pagerank_tol)


def _percolation_score(g: AttributedGraph, spec: SamplerSpec) -> np.ndarray:
    return collective_influence(g, spec.ci_radius)


_STRATEGIES = {
    "nodes": _sample_nodes,
    "nedges": _sample_nedges,
    "snowball": _sample_snowball,
    "degreeASC": _ranked(_degree_score, descending=False),
    "degreeDESC": _ranked(_degree_score, descending=True),
    "degreeMIX": _sample_degree_mix,
    "pagerankASC": _ranked(_pagerank_score, descending=False),
    "pagerankDESC": _ranked(_pagerank_score, descending=True),
    "percolationASC": _ranked(_percolation_score, descending=False),
    "percolationDESC": _ranked(_percolation_score, descending=True),
}
