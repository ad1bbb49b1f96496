"""Application configuration and constants."""

from pathlib import Path
from typing import Final
import os

# Base paths
BASE_DIR: Final[Path] = Path(__file__).parent.parent
SRC_DIR: Final[Path] = BASE_DIR / "src"
RESULTS_DIR: Final[Path] = BASE_DIR / "results"

# Network generation
DEFAULT_NODES: Final[int] = 2000
DEFAULT_M: Final[int] = 4
DEFAULT_MINORITY_FRACTION: Final[float] = 0.5
DENSE_M_THRESHOLD: Final[int] = 10

# Sampling
SAMPLER_METHODS: Final[tuple[str, ...]] = (
    "nodes",
    "nedges",
    "snowball",
    "degreeASC",
    "degreeDESC",
    "degreeMIX",
    "pagerankASC",
    "pagerankDESC",
    "percolationASC",
    "percolationDESC",
)
DEFAULT_CI_RADIUS: Final[int] = 2
DEFAULT_PAGERANK_DAMPING: Final[float] = 0.85
DEFAULT_PAGERANK_TOL: Final[float] = 1e-8
PAGERANK_MAX_ITER: Final[int] = 1000

# Relaxation labelling
DEFAULT_ITERATIONS: Final[int] = 100
DEFAULT_BETA0: Final[float] = 1.0
DEFAULT_DECAY: Final[float] = 0.99

# Experiment harness
DEFAULT_HOMOPHILY_GRID: Final[tuple[float, ...]] = tuple(round(0.1 * i, 1) for i in range(11))
DEFAULT_SAMPLE_FRACTIONS: Final[tuple[float, ...]] = (0.05,) + tuple(round(0.1 * i, 1) for i in range(1, 10))
DEFAULT_RUNS: Final[int] = 5
DEFAULT_BASE_SEED: Final[int] = 42
DEFAULT_ERROR_THRESHOLD: Final[float] = 0.2
PLOT_FIGURES: Final[tuple[str, ...]] = ("rocauc_curves", "error_heatmap", "min_sample_bars")

# Output formats
CSV_FLOAT_FORMAT: Final[str] = "%.6g"
CSV_LINE_TERMINATOR: Final[str] = "\r\n"
UNDEFINED_MARKER: Final[str] = "undefined"
RAW_RESULTS_FILE: Final[str] = "results_raw.csv"
AGGREGATE_RESULTS_FILE: Final[str] = "results_aggregate.csv"

# Environment
DEFAULT_LOG_LEVEL: Final[str] = "INFO"
LOG_FORMAT: Final[str] = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def resolve_workers(override: int | None = None) -> int:
    """Resolve the worker count for sweeps.

    Args:
        override: Explicit worker count; 0 or None defers to NETINFER_THREADS

    Returns:
        Number of worker processes (at least 1)
    """
    requested = override
    if not requested:
        raw = os.getenv("NETINFER_THREADS", "0").strip() or "0"
        try:
            requested = int(raw)
        except ValueError:
            requested = 0

    if requested <= 0:
        return os.cpu_count() or 1
    return requested


def resolve_log_level(verbose: bool = False) -> str:
    """Resolve the log level from ``--verbose`` and NETINFER_LOG_LEVEL."""
    if verbose:
        return "DEBUG"
    return (os.getenv("NETINFER_LOG_LEVEL", "").strip() or DEFAULT_LOG_LEVEL).upper()
