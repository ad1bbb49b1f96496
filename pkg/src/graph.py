"""Attributed graph representation.

Nodes are dense integers ``0..N-1`` carrying one binary class label. The
graph is simple and undirected; adjacency is kept in CSR form with every
neighbor list sorted ascending, so all iteration orders are deterministic.
Instances are immutable after construction.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Optional
import logging

import networkx as nx
import numpy as np
import scipy.sparse as sp

from errors import InputError

logger = logging.getLogger(__name__)

NUM_CLASSES = 2


class AttributedGraph:
    """Undirected, unweighted, simple graph with one binary label per node."""

    def __init__(
        self,
        labels: Sequence[int] | np.ndarray,
        edges: Iterable[tuple[int, int]] | np.ndarray = (),
        node_names: Optional[Sequence[str]] = None,
        class_names: Optional[Sequence[str]] = None,
    ):
        """Build a graph, collapsing duplicate edges.

        Args:
            labels: Class index (0 or 1) per node; its length fixes N
            edges: Unordered node-id pairs
            node_names: Optional external id per node
            class_names: Optional external name per class index

        Raises:
            InputError: On self-loops, out-of-range ids or invalid labels
        """
        label_array = np.asarray(labels, dtype=np.int64).reshape(-1)
        if label_array.size and (label_array.min() < 0 or label_array.max() >= NUM_CLASSES):
            raise InputError("labels must be class indices in {0, 1}")
        n = int(label_array.size)

        edge_array = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        edge_array = edge_array.reshape(-1, 2)

        if edge_array.size:
            if edge_array.min() < 0 or edge_array.max() >= n:
                raise InputError(f"edge endpoint out of range for graph with {n} nodes")
            loops = edge_array[:, 0] == edge_array[:, 1]
            if loops.any():
                node = int(edge_array[loops][0, 0])
                raise InputError(f"self-loop on node {node} is not allowed")

            canonical = np.sort(edge_array, axis=1)
            unique = np.unique(canonical, axis=0)
            if len(unique) < len(canonical):
                logger.warning(f"Collapsed {len(canonical) - len(unique)} duplicate edge(s)")
            edge_array = unique
        else:
            edge_array = np.empty((0, 2), dtype=np.int64)

        if node_names is not None and len(node_names) != n:
            raise InputError(f"expected {n} node names, got {len(node_names)}")

        self._labels = label_array.astype(np.int8)
        self._edges = edge_array
        self._indptr, self._indices = _build_csr(n, edge_array)
        self._node_names = tuple(str(name) for name in node_names) if node_names is not None else None
        self._class_names = tuple(str(name) for name in class_names) if class_names is not None else ("0", "1")

        for array in (self._labels, self._edges, self._indptr, self._indices):
            array.setflags(write=False)

    # ----- basic properties -----

    @property
    def node_count(self) -> int:
        return int(self._labels.size)

    @property
    def edge_count(self) -> int:
        return int(len(self._edges))

    @property
    def labels(self) -> np.ndarray:
        """Read-only label array of length N."""
        return self._labels

    @property
    def edges(self) -> np.ndarray:
        """Read-only (|E|, 2) array of edges with ``i < j``, sorted."""
        return self._edges

    @property
    def node_names(self) -> Optional[tuple[str, ...]]:
        return self._node_names

    @property
    def class_names(self) -> tuple[str, ...]:
        return self._class_names

    def __repr__(self) -> str:
        return f"AttributedGraph(N={self.node_count}, |E|={self.edge_count})"

    # ----- structural queries -----

    def degree(self, v: int) -> int:
        """Return the number of neighbors of node ``v``."""
        self._check_node(v)
        return int(self._indptr[v + 1] - self._indptr[v])

    def degrees(self) -> np.ndarray:
        """Return the degree of every node as an array."""
        return np.diff(self._indptr)

    def neighbors(self, v: int) -> list[int]:
        """Return the neighbors of ``v`` sorted ascending."""
        self._check_node(v)
        return self._indices[self._indptr[v]:self._indptr[v + 1]].tolist()

    def neighbor_array(self, v: int) -> np.ndarray:
        self._check_node(v)
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def induced_subgraph(self, nodes: Iterable[int]) -> tuple[AttributedGraph, dict[int, int]]:
        """Extract the subgraph induced by ``nodes``.

        Args:
            nodes: Node ids to keep

        Returns:
            The subgraph and the mapping from original to new node ids
            (new ids follow ascending original id)

        Raises:
            InputError: If any id is not a node of this graph
        """
        kept = sorted({int(v) for v in nodes})
        for v in kept:
            self._check_node(v)

        mapping = {old: new for new, old in enumerate(kept)}
        member = np.zeros(self.node_count, dtype=bool)
        member[kept] = True

        new_id = np.full(self.node_count, -1, dtype=np.int64)
        new_id[kept] = np.arange(len(kept))
        inside = member[self._edges[:, 0]] & member[self._edges[:, 1]]
        sub_edges = new_id[self._edges[inside]]

        names = [self._node_names[v] for v in kept] if self._node_names is not None else None
        sub = AttributedGraph(self._labels[kept], sub_edges, node_names=names, class_names=self._class_names)
        return sub, mapping

    def adjacency_matrix(self) -> sp.csr_matrix:
        """Return the symmetric 0/1 adjacency matrix as CSR."""
        data = np.ones(self._indices.size, dtype=np.float64)
        n = self.node_count
        return sp.csr_matrix((data, self._indices.copy(), self._indptr.copy()), shape=(n, n))

    def to_networkx(self) -> nx.Graph:
        """Convert to a networkx graph with node attribute ``label``."""
        graph = nx.Graph()
        graph.add_nodes_from((v, {"label": int(c)}) for v, c in enumerate(self._labels))
        graph.add_edges_from(map(tuple, self._edges.tolist()))
        return graph

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise InputError(f"node id {v} out of range [0, {self.node_count})")


def _build_csr(n: int, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int64)
    counts = np.bincount(src, minlength=n) if src.size else np.zeros(n, dtype=np.int64)
    indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return indptr, indices
