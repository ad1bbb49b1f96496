"""Scale-free network generation with tunable homophily.

Growth follows preferential attachment where the pull of an existing node i
on an arriving node j is ``h[c_i][c_j] * k_i``: its degree scaled by the
homophily between the two classes. Homophily is symmetric and
complementary, ``h_00 = h_11 = H`` and ``h_01 = h_10 = 1 - H``.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
import math

import numpy as np

from config import DEFAULT_M, DEFAULT_MINORITY_FRACTION, DEFAULT_NODES
from errors import InputError
from graph import AttributedGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of one generated network."""

    nodes: int = DEFAULT_NODES
    m: int = DEFAULT_M
    homophily: float = 0.5
    minority_fraction: float = DEFAULT_MINORITY_FRACTION
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not self.nodes > self.m >= 1:
            raise InputError(f"need N > m >= 1, got N={self.nodes}, m={self.m}")
        if not 0.0 <= self.homophily <= 1.0:
            raise InputError(f"homophily must lie in [0, 1], got {self.homophily}")
        if not 0.0 < self.minority_fraction <= 0.5:
            raise InputError(f"minority_fraction must lie in (0, 0.5], got {self.minority_fraction}")
        minority = self.minority_count
        if minority < 1 or self.nodes - minority < 1:
            raise InputError(f"minority_fraction {self.minority_fraction} leaves a class empty at N={self.nodes}")

    @property
    def minority_count(self) -> int:
        """Number of class-1 nodes, ``minority_fraction * N`` rounded half up."""
        return int(math.floor(self.minority_fraction * self.nodes + 0.5))

    @property
    def homophily_matrix(self) -> np.ndarray:
        h = self.homophily
        return np.array([[h, 1.0 - h], [1.0 - h, h]])

    @property
    def expected_edges(self) -> int:
        return (self.nodes - self.m) * self.m


def target_weight(cfg: GeneratorConfig, class_j: int, class_i: int, k_i: int) -> float:
    """Unnormalized attachment weight of candidate i for arriving node j.

    Args:
        cfg: Generator configuration (supplies the homophily matrix)
        class_j: Class of the arriving node
        class_i: Class of the candidate
        k_i: Current degree of the candidate

    Returns:
        ``h[class_i][class_j] * k_i``
    """
    return float(cfg.homophily_matrix[class_i, class_j] * k_i)


def generate(cfg: GeneratorConfig) -> AttributedGraph:
    """Grow a network by homophilic preferential attachment.

    The first ``m`` arrivals start without edges; every later arrival links
    to ``m`` distinct earlier nodes drawn without replacement, weights
    renormalized after each draw. The result has exactly ``(N - m) * m``
    edges for every seed and every H.

    Args:
        cfg: Generator configuration

    Returns:
        The generated graph
    """
    rng = np.random.default_rng(cfg.rng_seed)
    n, m = cfg.nodes, cfg.m

    labels = np.zeros(n, dtype=np.int8)
    labels[:cfg.minority_count] = 1
    labels = rng.permutation(labels)

    order = _arrival_order(labels, m, rng)
    arrival_labels = labels[order]
    h = cfg.homophily_matrix

    degree = np.zeros(n, dtype=np.float64)
    edges = np.empty((cfg.expected_edges, 2), dtype=np.int64)
    cursor = 0

    for t in range(m, n):
        # Affinity of each earlier arrival toward the newcomer, as in target_weight
        affinity = h[arrival_labels[:t], arrival_labels[t]]
        targets = _draw_targets(affinity, degree[:t], m, rng)

        degree[targets] += 1
        degree[t] += m
        edges[cursor:cursor + m, 0] = order[t]
        edges[cursor:cursor + m, 1] = order[targets]
        cursor += m

    logger.debug(f"Generated network N={n}, m={m}, H={cfg.homophily}, |E|={cursor}")
    return AttributedGraph(labels, edges)


def _arrival_order(labels: np.ndarray, m: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded arrival permutation whose first m entries alternate classes."""
    pools = [list(rng.permutation(np.flatnonzero(labels == c))) for c in (0, 1)]

    head: list[int] = []
    wanted = 0
    for _ in range(m):
        pool = pools[wanted] if pools[wanted] else pools[1 - wanted]
        head.append(int(pool.pop(0)))
        wanted = 1 - wanted

    rest = rng.permutation(np.array(pools[0] + pools[1], dtype=np.int64))
    return np.concatenate([np.array(head, dtype=np.int64), rest])


def _draw_targets(affinity: np.ndarray, degree: np.ndarray, m: int, rng: np.random.Generator) -> np.ndarray:
    """Draw m distinct candidates proportionally to ``affinity * degree``.

    When every remaining weight is zero the draw falls back to the affinity
    alone (degree smoothed to 1), then to uniform over remaining candidates.
    """
    weights = affinity * degree
    available = np.ones(affinity.size, dtype=bool)
    chosen = np.empty(m, dtype=np.int64)

    for draw in range(m):
        w = np.where(available, weights, 0.0)
        if w.sum() <= 0.0:
            w = np.where(available, affinity, 0.0)
        if w.sum() <= 0.0:
            w = available.astype(np.float64)

        cumulative = np.cumsum(w)
        idx = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        if idx >= w.size or w[idx] <= 0.0:
            idx = int(np.flatnonzero(w > 0.0)[-1])

        chosen[draw] = idx
        available[idx] = False

    return chosen
