import pandas as pd
import pytest

from errors import InputError, ParseError
from pipeline import ResultRow
from reporting import aggregate, plot_data, read_results, summarize_min_sample, write_plot_data
from run import results_frame, write_results

GRID = (0.05, 0.1, 0.2, 0.3)


def raw_results(errors: dict[str, tuple[list[float], list[float]]], network_id: str = "net-H0.9", h: float = 0.9, runs: int = 2) -> pd.DataFrame:
    rows = []
    for sampler, (class0, class1) in errors.items():
        for p, e0, e1 in zip(GRID, class0, class1):
            for r in range(runs):
                rows.append(ResultRow(
                    network_id=network_id,
                    H_target=h,
                    density_class="sparse",
                    sampler=sampler,
                    p=p,
                    run_index=r,
                    roc_auc=1.0 - (e0 + e1) / 2 + 0.01 * r,
                    error_class0=e0,
                    error_class1=e1,
                    overall_error=(e0 + e1) / 2,
                    measured_H=h,
                    measured_B=0.5,
                    seed_subgraph_edge_count=10 * r,
                ))
    return results_frame(rows)


EXAMPLE = {
    "degreeDESC": ([0.5, 0.3, 0.1, 0.05], [0.4, 0.25, 0.15, 0.1]),
    "degreeASC": ([0.5, 0.5, 0.4, 0.3], [0.5, 0.45, 0.4, 0.35]),
}


def test_aggregate_means_and_stds():
    agg = aggregate(raw_results(EXAMPLE))
    assert len(agg) == 2 * len(GRID)
    first = agg.iloc[0]
    assert first["n_runs"] == 2
    assert first["n_errors"] == 0
    assert first["roc_auc_mean"] == pytest.approx(1.0 - 0.45 + 0.005)
    assert first["roc_auc_std"] == pytest.approx(0.01 / 2 ** 0.5)
    assert first["seed_subgraph_edge_count_mean"] == pytest.approx(5.0)


def test_aggregate_skips_undefined_and_counts_errors():
    raw = raw_results({"nodes": ([0.1] * 4, [0.1] * 4)}, runs=1)
    raw.loc[0, "roc_auc"] = None
    raw.loc[1, "error"] = "empty test set"
    agg = aggregate(raw)
    assert pd.isna(agg.loc[0, "roc_auc_mean"])
    assert agg.loc[1, "n_errors"] == 1


def test_summarize_min_sample_examples():
    summary = summarize_min_sample(raw_results(EXAMPLE))
    by_sampler = dict(zip(summary["sampler"], summary["min_p"]))
    assert by_sampler["degreeDESC"] == 0.2
    assert by_sampler["degreeASC"] == "none"
    assert list(summary.columns) == ["network_id", "H_target", "density_class", "sampler", "min_p"]


def test_summarize_accepts_aggregated_input():
    raw = raw_results(EXAMPLE)
    assert summarize_min_sample(aggregate(raw)).equals(summarize_min_sample(raw))


def test_rocauc_curves_shape():
    panels = plot_data(raw_results(EXAMPLE), "rocauc_curves")
    assert list(panels) == ["net-H0.9"]
    table = panels["net-H0.9"]
    assert list(table.columns) == ["x", "series", "mean", "std"]
    assert len(table) == 2 * len(GRID)
    assert set(table["series"]) == {"degreeDESC", "degreeASC"}


def test_error_heatmap_shape():
    raw = pd.concat([
        raw_results(EXAMPLE, network_id="net-H0.1", h=0.1),
        raw_results(EXAMPLE, network_id="net-H0.9", h=0.9),
    ], ignore_index=True)
    panels = plot_data(raw, "error_heatmap")
    assert set(panels) == {"sparse-degreeDESC", "sparse-degreeASC"}
    table = panels["sparse-degreeDESC"]
    assert len(table) == 2 * len(GRID)
    assert sorted(set(table["x"])) == [0.1, 0.9]
    assert sorted(set(table["series"])) == list(GRID)


def test_min_sample_bars_shape():
    table = plot_data(raw_results(EXAMPLE), "min_sample_bars")["net-H0.9"]
    assert len(table) == 2
    values = dict(zip(table["x"], table["mean"]))
    assert values["degreeDESC"] == 0.2
    assert pd.isna(values["degreeASC"])


def test_unknown_figure():
    with pytest.raises(InputError):
        plot_data(raw_results(EXAMPLE), "scatter")


def test_write_plot_data_names_files(tmp_path):
    panels = plot_data(raw_results(EXAMPLE), "error_heatmap")
    written = write_plot_data(panels, tmp_path / "plots", "error_heatmap")
    assert sorted(path.name for path in written) == ["error_heatmap__sparse-degreeASC.csv", "error_heatmap__sparse-degreeDESC.csv"]


def test_results_survive_csv(tmp_path):
    raw = raw_results(EXAMPLE)
    raw.loc[3, "error"] = "empty test set"
    raw_path, aggregate_path = write_results(raw, tmp_path)

    loaded = read_results(raw_path)
    assert len(loaded) == len(raw)
    assert loaded["error"].notna().sum() == 1
    assert loaded["wall_time_ms"].isna().all()
    assert summarize_min_sample(loaded).equals(summarize_min_sample(raw))
    assert len(read_results(aggregate_path)) == 2 * len(GRID)


def test_read_results_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_results(tmp_path / "absent.csv")
