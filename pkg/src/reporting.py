"""Aggregation, minimal-sample summaries and plot-ready tables."""

from __future__ import annotations

from pathlib import Path
import logging
import re

import numpy as np
import pandas as pd

from config import (
    CSV_FLOAT_FORMAT,
    CSV_LINE_TERMINATOR,
    DEFAULT_ERROR_THRESHOLD,
    PLOT_FIGURES,
    UNDEFINED_MARKER,
)
from errors import InputError, OutputError, ParseError
from utils import ensure_directory

logger = logging.getLogger(__name__)

GROUP_COLUMNS = ["network_id", "H_target", "density_class", "sampler", "p"]
METRIC_COLUMNS = [
    "roc_auc",
    "error_class0",
    "error_class1",
    "overall_error",
    "measured_H",
    "measured_B",
    "seed_subgraph_edge_count",
]
NO_MIN_SAMPLE = "none"


def aggregate(raw: pd.DataFrame) -> pd.DataFrame:
    """Mean and standard deviation of every metric over runs.

    Undefined values are skipped; ``n_errors`` counts error-marked rows.
    """
    values = raw[GROUP_COLUMNS].copy()
    for column in METRIC_COLUMNS:
        values[column] = pd.to_numeric(raw[column], errors="coerce").astype(float)
    values["failed"] = raw["error"].notna() if "error" in raw.columns else False

    grouped = values.groupby(GROUP_COLUMNS, dropna=False, sort=False)
    stats = grouped[METRIC_COLUMNS].agg(["mean", "std"])
    stats.columns = [f"{metric}_{stat}" for metric, stat in stats.columns]

    stats.insert(0, "n_runs", grouped.size())
    stats.insert(1, "n_errors", grouped["failed"].sum().astype(int))
    return stats.reset_index()


def is_aggregated(results: pd.DataFrame) -> bool:
    return "overall_error_mean" in results.columns


def summarize_min_sample(results: pd.DataFrame, threshold: float = DEFAULT_ERROR_THRESHOLD) -> pd.DataFrame:
    """Smallest fraction p at which both class errors fall below ``threshold``.

    Args:
        results: Raw or aggregated results
        threshold: Error bound that both mean class errors must beat

    Returns:
        One row per (network, sampler) with ``min_p``; "none" when no
        fraction of the grid qualifies
    """
    agg = results if is_aggregated(results) else aggregate(results)

    rows = []
    for (network_id, sampler), group in agg.groupby(["network_id", "sampler"], sort=False):
        group = group.sort_values("p")
        qualifies = (group["error_class0_mean"] < threshold) & (group["error_class1_mean"] < threshold)
        min_p = float(group.loc[qualifies, "p"].iloc[0]) if qualifies.any() else NO_MIN_SAMPLE
        rows.append({
            "network_id": network_id,
            "H_target": group["H_target"].iloc[0],
            "density_class": group["density_class"].iloc[0],
            "sampler": sampler,
            "min_p": min_p,
        })

    return pd.DataFrame(rows, columns=["network_id", "H_target", "density_class", "sampler", "min_p"])


def plot_data(
    results: pd.DataFrame,
    figure: str,
    threshold: float = DEFAULT_ERROR_THRESHOLD,
) -> dict[str, pd.DataFrame]:
    """Reshape results into tidy (x, series, mean, std) tables per panel.

    Figures:
        rocauc_curves: one panel per network, x = p, series = sampler
        error_heatmap: one panel per density class and sampler,
            x = target homophily, series = p, values = overall error
        min_sample_bars: one panel per network, x = sampler, mean = minimal p

    Raises:
        InputError: On an unknown figure name
    """
    if figure not in PLOT_FIGURES:
        raise InputError(f"unknown figure '{figure}', expected one of {', '.join(PLOT_FIGURES)}")

    agg = results if is_aggregated(results) else aggregate(results)
    panels: dict[str, pd.DataFrame] = {}

    if figure == "rocauc_curves":
        for network_id, group in agg.groupby("network_id", sort=False):
            panels[str(network_id)] = _tidy(group["p"], group["sampler"], group["roc_auc_mean"], group["roc_auc_std"])

    elif figure == "error_heatmap":
        generated = agg[agg["H_target"].notna()]
        for (density, sampler), group in generated.groupby(["density_class", "sampler"], sort=False):
            group = group.sort_values(["p", "H_target"])
            panels[f"{density}-{sampler}"] = _tidy(group["H_target"], group["p"], group["overall_error_mean"], group["overall_error_std"])

    else:
        summary = summarize_min_sample(agg, threshold)
        for network_id, group in summary.groupby("network_id", sort=False):
            min_p = pd.to_numeric(group["min_p"].replace(NO_MIN_SAMPLE, np.nan))
            panels[str(network_id)] = _tidy(group["sampler"], pd.Series("min_p", index=group.index), min_p, pd.Series(np.nan, index=group.index))

    return panels


def write_plot_data(panels: dict[str, pd.DataFrame], output_dir: Path, figure: str) -> list[Path]:
    """Write one CSV per panel, named ``<figure>__<panel>.csv``."""
    try:
        ensure_directory(output_dir)
    except OSError as e:
        raise OutputError(f"cannot create output directory {output_dir}: {e}") from e

    written = []
    for key, table in panels.items():
        path = output_dir / f"{figure}__{_slug(key)}.csv"
        write_csv(table, path)
        written.append(path)
    logger.info(f"Wrote {len(written)} {figure} table(s) to {output_dir}")
    return written


def write_csv(frame: pd.DataFrame, path: Path) -> None:
    """Write an RFC-4180 CSV with 6 significant digits and undefined markers."""
    try:
        frame.to_csv(
            path,
            index=False,
            float_format=CSV_FLOAT_FORMAT,
            na_rep=UNDEFINED_MARKER,
            lineterminator=CSV_LINE_TERMINATOR,
        )
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e


def read_results(path: Path) -> pd.DataFrame:
    """Load a raw or aggregate results CSV."""
    try:
        frame = pd.read_csv(path, na_values=[UNDEFINED_MARKER], keep_default_na=False)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"cannot read results: {e}", path=Path(path)) from e

    if "error" in frame.columns:
        frame["error"] = frame["error"].astype(object).mask(frame["error"] == "")
    return frame


def _tidy(x: pd.Series, series: pd.Series, mean: pd.Series, std: pd.Series) -> pd.DataFrame:
    return pd.DataFrame({
        "x": x.to_numpy(),
        "series": series.to_numpy(),
        "mean": mean.to_numpy(dtype=float),
        "std": std.to_numpy(dtype=float),
    })


def _slug(key: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", key)
