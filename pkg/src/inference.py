"""Network-only Bayes relational classification with relaxation labelling.

The local model is the Laplace-smoothed class prior of the seeds. The
relational model is the smoothed conditional ``P(neighbor label | own
label)`` counted over edges among seeds. Collective inference scores every
unlabelled node with the expected neighbor log-likelihood, normalizes with
a softmax and blends into the previous estimate under a decaying weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional
import logging

import numpy as np

from config import DEFAULT_BETA0, DEFAULT_DECAY, DEFAULT_ITERATIONS
from errors import InputError
from graph import NUM_CLASSES, AttributedGraph
from samplers import SeedSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassPriors:
    prior: tuple[float, float]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.prior, dtype=np.float64)


@dataclass(frozen=True)
class RelationalModel:
    """Smoothed neighbor-label conditionals plus class priors.

    ``cond[c][l]`` is the probability that a neighbor of a class-c node
    has label l. ``training_edges`` is the edge count of the seed subgraph
    the model was learnt from.
    """

    cond: tuple[tuple[float, float], tuple[float, float]]
    priors: ClassPriors
    training_edges: int = 0

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.cond, dtype=np.float64)


@dataclass(frozen=True)
class RelaxationParams:
    iterations: int = DEFAULT_ITERATIONS
    beta0: float = DEFAULT_BETA0
    decay: float = DEFAULT_DECAY

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise InputError(f"iterations must be >= 1, got {self.iterations}")
        if not 0.0 < self.decay < 1.0:
            raise InputError(f"decay must lie in (0, 1), got {self.decay}")
        if not 0.0 < self.beta0 <= 1.0:
            raise InputError(f"beta0 must lie in (0, 1], got {self.beta0}")

    def beta(self, t: int) -> float:
        """Blending weight of iteration ``t`` (1-based)."""
        return self.beta0 * self.decay ** (t - 1)


@dataclass
class Posteriors:
    """Per-node class distributions; seed rows are frozen one-hot."""

    p: np.ndarray
    frozen: np.ndarray
    history: list[float] = field(default_factory=list)

    def unlabelled_ids(self) -> np.ndarray:
        return np.flatnonzero(~self.frozen)

    def scores(self) -> np.ndarray:
        """Posterior of class 1 for every unlabelled node, in id order."""
        return self.p[~self.frozen, 1]


def learn_local(g: AttributedGraph, seeds: SeedSet) -> ClassPriors:
    """Laplace-smoothed class priors of the seed nodes.

    Raises:
        InputError: If the seed set is empty
    """
    if len(seeds) == 0:
        raise InputError("cannot learn class priors from an empty seed set")

    counts = np.bincount(g.labels[seeds.sorted_ids()], minlength=NUM_CLASSES)
    total = counts.sum() + NUM_CLASSES
    return ClassPriors(prior=(float((counts[0] + 1) / total), float((counts[1] + 1) / total)))


def learn_relational(g: AttributedGraph, seeds: SeedSet) -> RelationalModel:
    """Learn neighbor-label conditionals from edges among seeds.

    Each seed-seed edge with endpoint classes (a, b) is counted once in each
    direction, adding to ``n[a][b]`` and ``n[b][a]``, so a same-class edge adds two
    to ``n[c][c]``. Rows are Laplace-smoothed and a seed subgraph without
    edges yields uniform rows.
    """
    priors = learn_local(g, seeds)
    subgraph, _ = g.induced_subgraph(seeds.node_ids)

    counts = np.zeros((NUM_CLASSES, NUM_CLASSES), dtype=np.int64)
    if subgraph.edge_count:
        ends = subgraph.labels[subgraph.edges].astype(np.int64)
        np.add.at(counts, (ends[:, 0], ends[:, 1]), 1)
        np.add.at(counts, (ends[:, 1], ends[:, 0]), 1)

    cond = (counts + 1) / (counts.sum(axis=1, keepdims=True) + NUM_CLASSES)
    logger.debug(f"Relational model from {subgraph.edge_count} seed edges: {cond.tolist()}")
    return RelationalModel(
        cond=(tuple(cond[0].tolist()), tuple(cond[1].tolist())),
        priors=priors,
        training_edges=subgraph.edge_count,
    )


def relaxation_label(
    g: AttributedGraph,
    seeds: SeedSet,
    model: RelationalModel,
    params: RelaxationParams = RelaxationParams(),
    on_iteration: Optional[Callable[[int, np.ndarray], None]] = None,
) -> Posteriors:
    """Infer unlabelled nodes by relaxation labelling.

    Seeds are frozen at their true label and unlabelled nodes start at the
    priors. Each synchronous iteration computes, for every unlabelled node
    with at least one edge, ``log prior(c) + sum_j sum_l p_j(l) log cond[c][l]``
    over all its neighbors in ``g``, applies a softmax and blends the result
    into the previous estimate with weight ``beta0 * decay**(t-1)``.

    Args:
        g: Full graph; all edges are visible, only seed labels are known
        seeds: Labelled training nodes
        model: Learnt relational model
        params: Iteration count and blending schedule
        on_iteration: Optional callback receiving ``(t, estimates)``

    Returns:
        Final posteriors, with the per-iteration max L1 change in ``history``
    """
    n = g.node_count
    frozen = seeds.mask(n)
    labels = g.labels.astype(np.int64)

    estimates = np.tile(model.priors.array, (n, 1))
    estimates[frozen] = np.eye(NUM_CLASSES)[labels[frozen]]

    # Isolated unlabelled nodes keep their priors
    active = np.flatnonzero(~frozen & (g.degrees() > 0))
    rows = g.adjacency_matrix()[active]

    log_prior = np.log(model.priors.array)
    log_cond = np.log(model.matrix)
    history: list[float] = []

    for t in range(1, params.iterations + 1):
        beta = params.beta(t)
        evidence = rows @ estimates

        score = np.empty((active.size, NUM_CLASSES))
        for c in range(NUM_CLASSES):
            score[:, c] = log_prior[c] + (evidence[:, 0] * log_cond[c, 0] + evidence[:, 1] * log_cond[c, 1])

        fresh = _softmax(score)
        blended = beta * fresh + (1.0 - beta) * estimates[active]

        change = float(np.abs(blended - estimates[active]).sum(axis=1).max()) if active.size else 0.0
        estimates = estimates.copy()
        estimates[active] = blended
        history.append(change)

        if on_iteration is not None:
            on_iteration(t, estimates)

    logger.debug(f"Relaxation labelling finished after {params.iterations} iterations (last change {history[-1]:.3g})")
    return Posteriors(p=estimates, frozen=frozen, history=history)


def predict(post: Posteriors) -> np.ndarray:
    """Argmax label per unlabelled node (id order); exact ties go to class 0."""
    rows = post.p[~post.frozen]
    return (rows[:, 1] > rows[:, 0]).astype(np.int8)


def _softmax(score: np.ndarray) -> np.ndarray:
    top = np.maximum(score[:, 0], score[:, 1])
    weights = np.exp(score - top[:, None])
    return weights / (weights[:, 0] + weights[:, 1])[:, None]
