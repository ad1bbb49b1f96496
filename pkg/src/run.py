"""Experiment configuration and parallel sweeps over the full grid."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional
import logging
import os
import time

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import pandas as pd
from tqdm import tqdm

from config import (
    AGGREGATE_RESULTS_FILE,
    DEFAULT_BASE_SEED,
    DEFAULT_HOMOPHILY_GRID,
    DEFAULT_M,
    DEFAULT_MINORITY_FRACTION,
    DEFAULT_NODES,
    DEFAULT_RUNS,
    DEFAULT_SAMPLE_FRACTIONS,
    DENSE_M_THRESHOLD,
    RAW_RESULTS_FILE,
    RESULTS_DIR,
    SAMPLER_METHODS,
    resolve_workers,
)
from errors import InputError, OutputError, ParseError
from graph import AttributedGraph
from graph_io import load_graph
from inference import RelaxationParams
from netgen import GeneratorConfig, generate
from pipeline import ResultRow, run_cell
from reporting import aggregate, write_csv
from samplers import SamplerSpec
from utils import ensure_directory, format_time_seconds, load_json, stable_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NetworkSpec:
    """A network entry of the experiment config.

    Generated entries are expanded across the homophily grid; file entries
    are used as they are.
    """

    kind: str = "generated"
    nodes: int = DEFAULT_NODES
    m: int = DEFAULT_M
    minority_fraction: float = DEFAULT_MINORITY_FRACTION
    seed: Optional[int] = None
    density_class: Optional[str] = None
    name: Optional[str] = None
    path: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.kind not in ("generated", "file"):
            raise InputError(f"network kind must be 'generated' or 'file', got '{self.kind}'")
        if self.kind == "file" and self.path is None:
            raise InputError("file networks need a 'path'")


@dataclass(frozen=True)
class NetworkInstance:
    """One concrete network of a sweep."""

    network_id: str
    density_class: str
    h_target: Optional[float] = None
    generator: Optional[GeneratorConfig] = None
    path: Optional[Path] = None

    def load(self) -> AttributedGraph:
        if self.generator is not None:
            return generate(self.generator)
        return load_graph(self.path)


@dataclass(frozen=True)
class ExperimentConfig:
    networks: tuple[NetworkSpec, ...] = (NetworkSpec(),)
    homophily_grid: tuple[float, ...] = DEFAULT_HOMOPHILY_GRID
    samplers: tuple[SamplerSpec, ...] = tuple(SamplerSpec(method=name, p=1.0) for name in SAMPLER_METHODS)
    sample_fractions: tuple[float, ...] = DEFAULT_SAMPLE_FRACTIONS
    runs: int = DEFAULT_RUNS
    relaxation: RelaxationParams = field(default_factory=RelaxationParams)
    base_seed: int = DEFAULT_BASE_SEED
    output_dir: Path = RESULTS_DIR
    record_timing: bool = False
    workers: Optional[int] = None

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise InputError(f"runs must be >= 1, got {self.runs}")
        for name, grid in (("networks", self.networks), ("samplers", self.samplers), ("sample_fractions", self.sample_fractions)):
            if not grid:
                raise InputError(f"{name} must not be empty")
        if any(spec.kind == "generated" for spec in self.networks) and not self.homophily_grid:
            raise InputError("homophily_grid must not be empty")
        for p in self.sample_fractions:
            if not 0.0 < p < 1.0:
                raise InputError(f"sample fractions must lie in (0, 1), got {p}")
        for h in self.homophily_grid:
            if not 0.0 <= h <= 1.0:
                raise InputError(f"homophily values must lie in [0, 1], got {h}")

    def expand_networks(self) -> list[NetworkInstance]:
        instances: list[NetworkInstance] = []
        for spec in self.networks:
            if spec.kind == "file":
                instances.append(NetworkInstance(network_id=spec.name or Path(spec.path).stem, density_class="file", path=Path(spec.path)))
                continue

            density = spec.density_class or ("sparse" if spec.m < DENSE_M_THRESHOLD else "dense")
            prefix = spec.name or f"hpa-N{spec.nodes}-m{spec.m}-B{spec.minority_fraction:g}"
            for h in self.homophily_grid:
                network_id = f"{prefix}-H{h:g}"
                seed = spec.seed if spec.seed is not None else stable_seed(self.base_seed, network_id)
                generator = GeneratorConfig(nodes=spec.nodes, m=spec.m, homophily=h, minority_fraction=spec.minority_fraction, rng_seed=seed)
                instances.append(NetworkInstance(network_id=network_id, density_class=density, h_target=h, generator=generator))
        return instances

    def cell_count(self) -> int:
        return len(self.expand_networks()) * len(self.samplers) * len(self.sample_fractions) * self.runs


@dataclass(frozen=True)
class SweepTask:
    """All cells of one (network, sampler) pair; runs inside a worker."""

    position: int
    network: NetworkInstance
    sampler: SamplerSpec
    sample_fractions: tuple[float, ...]
    runs: int
    relaxation: RelaxationParams
    base_seed: int
    record_timing: bool

    def cells(self) -> list[tuple[int, float, int]]:
        """(cell index, p, run index) in grid order."""
        per_task = len(self.sample_fractions) * self.runs
        return [
            (self.position * per_task + f * self.runs + r, p, r)
            for f, p in enumerate(self.sample_fractions)
            for r in range(self.runs)
        ]

    def error_rows(self, message: str) -> list[tuple[int, ResultRow]]:
        return [
            (index, ResultRow(
                network_id=self.network.network_id,
                H_target=self.network.h_target,
                density_class=self.network.density_class,
                sampler=self.sampler.method,
                p=p,
                run_index=r,
                error=message,
            ))
            for index, p, r in self.cells()
        ]


# ===== CONFIG LOADING =====


def load_experiment_config(path: Path) -> ExperimentConfig:
    """Read an experiment config from a JSON or TOML file.

    Relative paths inside the file resolve against the file's directory.

    Raises:
        ParseError: If the file cannot be read or decoded
        InputError: If keys or values are invalid
    """
    path = Path(path)
    if path.suffix.lower() == ".toml":
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except (OSError, tomllib.TOMLDecodeError) as e:
            raise ParseError(f"cannot read TOML config: {e}", path=path) from e
    else:
        data = load_json(path)
        if data is None:
            raise ParseError("cannot read JSON config", path=path)

    return experiment_from_dict(data, base_dir=path.parent)


def experiment_from_dict(data: dict[str, Any], base_dir: Path = Path(".")) -> ExperimentConfig:
    """Build an ExperimentConfig from plain config values."""
    known = {"networks", "homophily_grid", "samplers", "sample_fractions", "runs", "relaxation", "base_seed", "output_dir", "record_timing", "workers"}
    unknown = set(data) - known
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(sorted(unknown))}")

    kwargs: dict[str, Any] = {}
    if "networks" in data:
        kwargs["networks"] = tuple(_network_from_dict(entry, base_dir) for entry in data["networks"])
    if "samplers" in data:
        kwargs["samplers"] = tuple(_sampler_from_entry(entry) for entry in data["samplers"])
    if "homophily_grid" in data:
        kwargs["homophily_grid"] = tuple(float(h) for h in data["homophily_grid"])
    if "sample_fractions" in data:
        kwargs["sample_fractions"] = tuple(float(p) for p in data["sample_fractions"])
    if "relaxation" in data:
        kwargs["relaxation"] = _from_table(RelaxationParams, data["relaxation"], "relaxation")
    if "output_dir" in data:
        kwargs["output_dir"] = _resolve(data["output_dir"], base_dir)
    for key in ("runs", "base_seed", "workers"):
        if key in data:
            kwargs[key] = int(data[key])
    if "record_timing" in data:
        kwargs["record_timing"] = bool(data["record_timing"])

    return ExperimentConfig(**kwargs)


def _network_from_dict(entry: dict[str, Any], base_dir: Path) -> NetworkSpec:
    values = dict(entry)
    if "path" in values:
        values["path"] = _resolve(values["path"], base_dir)
    return _from_table(NetworkSpec, values, "networks")


def _sampler_from_entry(entry: str | dict[str, Any]) -> SamplerSpec:
    if isinstance(entry, str):
        return SamplerSpec(method=entry, p=1.0)
    values = {"p": 1.0, **entry}
    return _from_table(SamplerSpec, values, "samplers")


def _from_table(cls: type, values: Any, section: str):
    if not isinstance(values, dict):
        raise InputError(f"'{section}' entries must be tables")
    try:
        return cls(**values)
    except TypeError as e:
        raise InputError(f"invalid '{section}' entry {values}: {e}") from e


def _resolve(value: str | Path, base_dir: Path) -> Path:
    path = Path(value)
    return path if path.is_absolute() else base_dir / path


# ===== SWEEP =====


def build_tasks(cfg: ExperimentConfig) -> list[SweepTask]:
    tasks = []
    for network in cfg.expand_networks():
        for sampler in cfg.samplers:
            tasks.append(SweepTask(
                position=len(tasks),
                network=network,
                sampler=sampler,
                sample_fractions=tuple(cfg.sample_fractions),
                runs=cfg.runs,
                relaxation=cfg.relaxation,
                base_seed=cfg.base_seed,
                record_timing=cfg.record_timing,
            ))
    return tasks


@lru_cache(maxsize=4)
def _network_graph(network: NetworkInstance) -> AttributedGraph:
    return network.load()


def run_task(task: SweepTask) -> list[tuple[int, ResultRow]]:
    """Run every cell of a task; each cell seed derives from its grid position."""
    try:
        graph = _network_graph(task.network)
    except Exception as e:
        logger.error(f"✗ Network {task.network.network_id} unavailable: {e}")
        return task.error_rows(f"network unavailable: {e}")

    rows = []
    for index, p, r in task.cells():
        cell_seed = stable_seed(task.base_seed, task.network.network_id, task.sampler.method, p, r)
        row = run_cell(
            graph,
            replace(task.sampler, p=p),
            task.relaxation,
            cell_seed,
            network_id=task.network.network_id,
            h_target=task.network.h_target,
            density_class=task.network.density_class,
            run_index=r,
            record_timing=task.record_timing,
        )
        rows.append((index, row))
    return rows


def sweep(cfg: ExperimentConfig, workers: Optional[int] = None, progress: bool = True) -> pd.DataFrame:
    """Run the full cross-product of networks, samplers, fractions and runs.

    Rows are ordered by grid position, so the output does not depend on
    the worker count or completion order. Raw and aggregate CSVs are
    written to ``cfg.output_dir``.

    Args:
        cfg: Experiment configuration
        workers: Worker processes; defaults to cfg.workers, then NETINFER_THREADS
        progress: Show a progress bar

    Returns:
        Raw results table

    Raises:
        OutputError: If the output directory is not writable
    """
    _check_output_dir(cfg.output_dir)
    start_time = time.time()

    tasks = build_tasks(cfg)
    n_workers = min(resolve_workers(workers or cfg.workers), max(len(tasks), 1))
    logger.info(f"Starting sweep: {len(tasks)} tasks, {cfg.cell_count()} cells, {n_workers} worker(s)")

    collected: list[tuple[int, ResultRow]] = []
    if n_workers == 1:
        for task in tqdm(tasks, desc="Sweeping", disable=not progress):
            collected.extend(run_task(task))
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as executor:
            futures = {executor.submit(run_task, task): task for task in tasks}

            for future in tqdm(as_completed(futures), total=len(tasks), desc="Sweeping", disable=not progress):
                task = futures[future]
                try:
                    collected.extend(future.result())
                    logger.debug(f"✓ Completed: {task.network.network_id} / {task.sampler.method}")
                except Exception as e:
                    logger.error(f"✗ Error in {task.network.network_id} / {task.sampler.method}: {e}")
                    collected.extend(task.error_rows(f"worker failure: {e}"))

    collected.sort(key=lambda item: item[0])
    raw = results_frame([row for _, row in collected])
    write_results(raw, cfg.output_dir)

    n_errors = int(raw["error"].notna().sum())
    elapsed = time.time() - start_time
    logger.info(f"Sweep complete: {len(raw)} rows ({n_errors} error-marked) in {format_time_seconds(elapsed)}")
    return raw


def results_frame(rows: list[ResultRow]) -> pd.DataFrame:
    frame = pd.DataFrame([row.values() for row in rows], columns=ResultRow.columns())
    frame["seed_subgraph_edge_count"] = frame["seed_subgraph_edge_count"].astype("Int64")
    return frame


def write_results(raw: pd.DataFrame, output_dir: Path) -> tuple[Path, Path]:
    """Write raw rows and their mean/std aggregate as CSV."""
    raw_path = output_dir / RAW_RESULTS_FILE
    aggregate_path = output_dir / AGGREGATE_RESULTS_FILE
    try:
        write_csv(raw.assign(error=raw["error"].fillna("")), raw_path)
        write_csv(aggregate(raw), aggregate_path)
    except OSError as e:
        raise OutputError(f"cannot write results to {output_dir}: {e}") from e
    logger.info(f"Results written to {raw_path} and {aggregate_path}")
    return raw_path, aggregate_path


def _check_output_dir(output_dir: Path) -> None:
    try:
        ensure_directory(output_dir)
    except OSError as e:
        raise OutputError(f"cannot create output directory {output_dir}: {e}") from e
    if not os.access(output_dir, os.W_OK):
        raise OutputError(f"output directory {output_dir} is not writable")
