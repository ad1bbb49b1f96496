"""Single train/test cell: sample, learn, infer, score."""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields, replace
from typing import Optional
import logging
import time

from errors import InputError, NetInferError
from graph import AttributedGraph
from inference import Posteriors, RelationalModel, RelaxationParams, learn_relational, predict, relaxation_label
from metrics import ClassificationReport, balance, classification_report, homophily
from samplers import SamplerSpec, SeedSet, sample

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResultRow:
    """One (network, sampler, p, run) outcome; ``error`` marks failed cells."""

    network_id: str
    H_target: Optional[float]
    density_class: str
    sampler: str
    p: float
    run_index: int
    roc_auc: Optional[float] = None
    error_class0: Optional[float] = None
    error_class1: Optional[float] = None
    overall_error: Optional[float] = None
    measured_H: Optional[float] = None
    measured_B: Optional[float] = None
    seed_subgraph_edge_count: Optional[int] = None
    wall_time_ms: Optional[float] = None
    error: Optional[str] = None

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def values(self) -> tuple:
        return astuple(self)


@dataclass
class CellOutcome:
    seeds: SeedSet
    model: RelationalModel
    posteriors: Posteriors
    report: ClassificationReport


def classify(g: AttributedGraph, spec: SamplerSpec, relaxation: RelaxationParams) -> CellOutcome:
    """Run the full inference chain once; the test set is every non-seed node.

    Raises:
        InputError: If sampling fails or the test set is empty
    """
    seeds = sample(g, spec)
    if len(seeds) >= g.node_count:
        raise InputError("empty test set: every node is a seed")

    model = learn_relational(g, seeds)
    logger.debug(f"Priors {model.priors.prior}, relational model learnt from {model.training_edges} seed edges")

    posteriors = relaxation_label(g, seeds, model, relaxation)
    pred = predict(posteriors)
    truth = g.labels[posteriors.unlabelled_ids()]
    report = classification_report(posteriors.scores(), pred, truth)
    return CellOutcome(seeds=seeds, model=model, posteriors=posteriors, report=report)


def run_cell(
    g: AttributedGraph,
    spec: SamplerSpec,
    relaxation: RelaxationParams,
    run_seed: int,
    network_id: str = "",
    h_target: Optional[float] = None,
    density_class: str = "file",
    run_index: int = 0,
    record_timing: bool = False,
) -> ResultRow:
    """Execute one experiment cell and describe it as a result row.

    Args:
        g: Network to classify
        spec: Sampler template; its seed is replaced by ``run_seed``
        relaxation: Collective inference parameters
        run_seed: Seed of this cell
        network_id: Identifier written to the row
        h_target: Generator homophily, None for file networks
        density_class: sparse, dense or file
        run_index: Repetition index
        record_timing: Fill ``wall_time_ms`` (breaks byte-identical reruns)

    Returns:
        Result row; failures yield an error-marked row instead of raising
    """
    start = time.perf_counter()
    base = dict(
        network_id=network_id,
        H_target=h_target,
        density_class=density_class,
        sampler=spec.method,
        p=spec.p,
        run_index=run_index,
        measured_H=homophily(g),
        measured_B=balance(g),
    )

    try:
        outcome = classify(g, replace(spec, rng_seed=run_seed), relaxation)
    except NetInferError as e:
        logger.error(f"✗ Cell {network_id}/{spec.method}/p={spec.p}/run {run_index}: {e}")
        return ResultRow(**base, error=str(e))

    report = outcome.report
    elapsed_ms = (time.perf_counter() - start) * 1000.0 if record_timing else None
    return ResultRow(
        **base,
        roc_auc=report.roc_auc,
        error_class0=report.error_per_class[0],
        error_class1=report.error_per_class[1],
        overall_error=report.overall_error,
        seed_subgraph_edge_count=outcome.model.training_edges,
        wall_time_ms=elapsed_ms,
    )

