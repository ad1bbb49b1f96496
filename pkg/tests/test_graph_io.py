import logging

import numpy as np
import pytest

from errors import ParseError, ValidationError
from graph_io import load_graph, save_graph
from metrics import homophily
from netgen import GeneratorConfig, generate


def write(tmp_path, text: str):
    path = tmp_path / "graph.txt"
    path.write_text(text, encoding="utf-8")
    return path


def test_minimal_file(tmp_path):
    g = load_graph(write(tmp_path, "#nodes 2\n0 0\n1 1\n\n0 1\n"))
    assert g.node_count == 2
    assert g.edge_count == 1
    assert homophily(g) == 0.0


def test_string_ids_and_labels(tmp_path):
    text = "#nodes 3\n# students\nann female\nbob male\ncat female\n\nann bob\nbob cat  # friends\nann cat\n"
    g = load_graph(write(tmp_path, text))
    assert g.node_names == ("ann", "bob", "cat")
    assert g.class_names == ("female", "male")
    assert g.labels.tolist() == [0, 1, 0]
    assert g.edge_count == 3


def test_duplicate_edge_collapses_with_warning(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        g = load_graph(write(tmp_path, "a x\nb y\n\na b\nb a\n"))
    assert g.edge_count == 1
    assert "duplicate" in caplog.text


def test_unlabelled_and_isolated_nodes_are_dropped(tmp_path, caplog):
    text = "#nodes 5\na x\nb y\nc x\nd\ne y\n\na b\nb c\nc d\n"
    with caplog.at_level(logging.WARNING):
        g = load_graph(write(tmp_path, text))
    assert g.node_names == ("a", "b", "c")
    assert g.edge_count == 2
    assert "unlabelled" in caplog.text


def test_header_mismatch_only_warns(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        g = load_graph(write(tmp_path, "#nodes 9\na x\nb y\n\na b\n"))
    assert g.node_count == 2
    assert "header declares 9" in caplog.text


@pytest.mark.parametrize("text, line", [
    ("a x extra\nb y\n\na b\n", 1),
    ("a x\nb y\n\na b c\n", 4),
    ("a x\nb y\n\na a\n", 4),
    ("a x\na y\n\na b\n", 2),
    ("#nodes many\na x\n", 1),
])
def test_malformed_lines_report_line_numbers(tmp_path, text, line):
    with pytest.raises(ParseError) as info:
        load_graph(write(tmp_path, text))
    assert info.value.line_number == line
    assert f":{line}:" in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_graph(tmp_path / "absent.txt")


def test_class_count_validation(tmp_path):
    with pytest.raises(ValidationError):
        load_graph(write(tmp_path, "a x\nb x\n\na b\n"))
    with pytest.raises(ValidationError):
        load_graph(write(tmp_path, "a x\nb y\nc z\n\na b\nb c\n"))


def test_third_label_on_dropped_node_is_ignored(tmp_path):
    g = load_graph(write(tmp_path, "a x\nz w\nb y\nc x\n\na b\nb c\n"))
    assert g.node_names == ("a", "b", "c")
    assert g.class_names == ("x", "y")
    assert g.labels.tolist() == [0, 1, 0]


def test_save_then_load_preserves_structure(tmp_path):
    original = generate(GeneratorConfig(nodes=60, m=2, homophily=0.7, rng_seed=3))
    path = tmp_path / "out" / "net.txt"
    save_graph(original, path)

    loaded = load_graph(path)
    # Class indices follow first occurrence, so compare by class name
    assert np.array_equal(np.array(loaded.class_names)[loaded.labels], np.array(original.class_names)[original.labels])
    assert np.array_equal(loaded.edges, original.edges)
