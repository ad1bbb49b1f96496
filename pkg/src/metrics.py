"""Structural network statistics and classification measures."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Optional, Sequence
import logging
import math

import networkx as nx
import numpy as np
from scipy.stats import rankdata

from errors import InputError
from graph import NUM_CLASSES, AttributedGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StructuralReport:
    """Network properties; ``None`` marks a statistic that is undefined."""

    nodes: int
    edge_count: int
    density: float
    avg_degree: float
    homophily: Optional[float]
    balance: float
    degree_assortativity: Optional[float]
    attribute_assortativity: Optional[float]
    clustering: float
    class_counts: tuple[int, int]
    minority_class: int
    avg_degree_minority: Optional[float]
    avg_degree_majority: Optional[float]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class ClassificationReport:
    roc_auc: Optional[float]
    error_per_class: tuple[Optional[float], Optional[float]]
    overall_error: float
    mean_class_error: Optional[float]
    n_test: int

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def homophily(g: AttributedGraph) -> Optional[float]:
    """Fraction of edges joining same-class nodes, or None without edges."""
    if g.edge_count == 0:
        return None
    ends = g.labels[g.edges]
    return float(np.mean(ends[:, 0] == ends[:, 1]))


def balance(g: AttributedGraph) -> float:
    """Fraction of nodes in the majority class."""
    counts = np.bincount(g.labels, minlength=NUM_CLASSES)
    return float(counts.max() / counts.sum())


def structural(g: AttributedGraph) -> StructuralReport:
    """Compute the structural report of a graph.

    Args:
        g: Graph with at least two nodes

    Returns:
        Structural report; H and both assortativities are None when the
        graph has no edges (or the coefficient is otherwise undefined)
    """
    n, e = g.node_count, g.edge_count
    if n < 2:
        raise InputError(f"structural statistics need N >= 2, got {n}")

    degree = g.degrees()
    counts = np.bincount(g.labels, minlength=NUM_CLASSES)
    # Balanced graphs report class 1 as the minority
    minority = 0 if counts[0] < counts[1] else 1

    degree_r: Optional[float] = None
    attribute_r: Optional[float] = None
    clustering = 0.0
    if e:
        nx_graph = g.to_networkx()
        with np.errstate(divide="ignore", invalid="ignore"):
            degree_r = _defined(nx.degree_assortativity_coefficient(nx_graph))
            attribute_r = _defined(nx.attribute_assortativity_coefficient(nx_graph, "label"))
        clustering = float(nx.average_clustering(nx_graph))

    return StructuralReport(
        nodes=n,
        edge_count=e,
        density=2.0 * e / (n * (n - 1)),
        avg_degree=2.0 * e / n,
        homophily=homophily(g),
        balance=balance(g),
        degree_assortativity=degree_r,
        attribute_assortativity=attribute_r,
        clustering=clustering,
        class_counts=(int(counts[0]), int(counts[1])),
        minority_class=minority,
        avg_degree_minority=_class_mean(degree, g.labels, minority),
        avg_degree_majority=_class_mean(degree, g.labels, 1 - minority),
    )


def roc_auc(scores: Sequence[float] | np.ndarray, truth: Sequence[int] | np.ndarray) -> Optional[float]:
    """Rank-based ROC-AUC with midranks for ties.

    Args:
        scores: Posterior of class 1 per test node
        truth: True label per test node

    Returns:
        Probability that a random class-1 node outscores a random class-0
        node, or None when the test set holds a single class
    """
    scores = np.asarray(scores, dtype=np.float64)
    truth = np.asarray(truth)
    if scores.shape != truth.shape:
        raise InputError(f"scores and truth differ in length ({scores.size} vs {truth.size})")

    positives = truth == 1
    n_pos = int(positives.sum())
    n_neg = int(truth.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        return None

    ranks = rankdata(scores)
    return float((ranks[positives].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def per_class_error(pred: Sequence[int] | np.ndarray, truth: Sequence[int] | np.ndarray) -> tuple[Optional[float], Optional[float]]:
    """Misclassification rate within each true class (None if absent)."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if truth.size == 0:
        raise InputError("per-class error needs a nonempty test set")

    errors: list[Optional[float]] = []
    for c in range(NUM_CLASSES):
        members = truth == c
        errors.append(float(np.mean(pred[members] != c)) if members.any() else None)
    return errors[0], errors[1]


def classification_report(scores: np.ndarray, pred: np.ndarray, truth: np.ndarray) -> ClassificationReport:
    """Bundle ROC-AUC and error rates for one test set."""
    error_per_class = per_class_error(pred, truth)
    defined = [err for err in error_per_class if err is not None]
    return ClassificationReport(
        roc_auc=roc_auc(scores, truth),
        error_per_class=error_per_class,
        overall_error=float(np.mean(np.asarray(pred) != np.asarray(truth))),
        mean_class_error=float(np.mean(defined)) if defined else None,
        n_test=int(np.asarray(truth).size),
    )


def _defined(value: float) -> Optional[float]:
    value = float(value)
    return None if math.isnan(value) or math.isinf(value) else value


def _class_mean(degree: np.ndarray, labels: np.ndarray, c: int) -> Optional[float]:
    members = labels == c
    return float(degree[members].mean()) if members.any() else None
