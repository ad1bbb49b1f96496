"""Reading and writing attributed graphs as plain text.

File layout (UTF-8, whitespace-delimited, ``#`` starts a comment)::

    #nodes <N>
    <id> <label>
    ...
    <blank line>
    <id> <id>
    ...

Labels are arbitrary strings mapped to classes 0/1 by first occurrence.
"""

from __future__ import annotations

from pathlib import Path
import logging

from errors import OutputError, ParseError, ValidationError
from graph import NUM_CLASSES, AttributedGraph
from utils import ensure_directory

logger = logging.getLogger(__name__)


def load_graph(path: Path) -> AttributedGraph:
    """Load a graph file, keeping labelled nodes that have edges.

    Nodes without a label (or only referenced by edges) are dropped with
    their edges, then nodes left without edges are dropped too. Duplicate
    edges collapse with a warning.

    Args:
        path: Graph file

    Returns:
        Simple undirected graph with dense ids in declaration order

    Raises:
        ParseError: On malformed lines, self-loops or a missing file
        ValidationError: If the graph does not hold exactly two classes
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read graph file: {e}", path=path) from e

    declared_count: int | None = None
    node_labels: dict[str, str | None] = {}
    edge_names: list[tuple[str, str]] = []
    in_edges = False

    for line_number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#nodes"):
            declared_count = _parse_header(stripped, path, line_number)
            continue

        tokens = stripped.split("#", 1)[0].split()
        if not tokens:
            if not stripped and node_labels:
                in_edges = True
            continue

        if not in_edges:
            if len(tokens) > 2:
                raise ParseError(f"expected '<id> <label>', got {len(tokens)} fields", path, line_number)
            if tokens[0] in node_labels:
                raise ParseError(f"node '{tokens[0]}' declared twice", path, line_number)
            node_labels[tokens[0]] = tokens[1] if len(tokens) == 2 else None
        else:
            if len(tokens) != 2:
                raise ParseError(f"expected '<id> <id>', got {len(tokens)} fields", path, line_number)
            if tokens[0] == tokens[1]:
                raise ParseError(f"self-loop on node '{tokens[0]}'", path, line_number)
            edge_names.append((tokens[0], tokens[1]))

    if declared_count is not None and declared_count != len(node_labels):
        logger.warning(f"{path}: header declares {declared_count} nodes, found {len(node_labels)}")

    labelled = {name for name, label in node_labels.items() if label is not None}
    kept_edges = [(u, v) for u, v in edge_names if u in labelled and v in labelled]
    if len(kept_edges) < len(edge_names):
        logger.warning(f"{path}: dropped {len(edge_names) - len(kept_edges)} edge(s) touching unlabelled nodes")

    connected = {name for edge in kept_edges for name in edge}
    names = [name for name in node_labels if name in connected]
    dropped = len(node_labels) - len(names)
    if dropped:
        logger.warning(f"{path}: dropped {dropped} node(s) without label or edges")

    class_names: list[str] = []
    for name in names:
        if node_labels[name] not in class_names:
            class_names.append(node_labels[name])
    if len(class_names) > NUM_CLASSES:
        raise ValidationError(f"{path}: expected a binary label, found {len(class_names)} classes")

    labels = [class_names.index(node_labels[name]) for name in names]
    if len(set(labels)) < NUM_CLASSES:
        raise ValidationError(f"{path}: fewer than two classes remain after cleaning")

    index = {name: i for i, name in enumerate(names)}
    edges = [(index[u], index[v]) for u, v in kept_edges]
    graph = AttributedGraph(labels, edges, node_names=names, class_names=class_names)
    logger.info(f"Loaded {path.name}: N={graph.node_count}, |E|={graph.edge_count}")
    return graph


def save_graph(g: AttributedGraph, path: Path) -> None:
    """Write ``g`` in the text format read by :func:`load_graph`.

    Raises:
        OutputError: If the file cannot be written
    """
    path = Path(path)
    names = g.node_names or tuple(str(v) for v in range(g.node_count))
    classes = g.class_names

    lines = [f"#nodes {g.node_count}"]
    lines.extend(f"{names[v]} {classes[c]}" for v, c in enumerate(g.labels.tolist()))
    lines.append("")
    lines.extend(f"{names[u]} {names[v]}" for u, v in g.edges.tolist())

    try:
        ensure_directory(path.parent)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write graph file {path}: {e}") from e
    logger.info(f"Saved graph to {path}")


def _parse_header(line: str, path: Path, line_number: int) -> int:
    tokens = line.split("#", 2)[1].split()
    if len(tokens) != 2 or not tokens[1].isdigit():
        raise ParseError("expected header '#nodes <N>'", path, line_number)
    return int(tokens[1])
