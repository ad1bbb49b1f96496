import math

import networkx as nx
import numpy as np
import pytest

from config import SAMPLER_METHODS
from errors import InputError
from graph import AttributedGraph
from netgen import GeneratorConfig, generate
from samplers import SamplerSpec, collective_influence, pagerank, rank_nodes, sample, target_size


def random_graph(rng: np.random.Generator, max_nodes: int) -> AttributedGraph:
    n = int(rng.integers(2, max_nodes + 1))
    density = rng.uniform(0.05, 0.5)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    labels = rng.integers(0, 2, size=n)
    return AttributedGraph(labels, edges)


def dense_pagerank(g: AttributedGraph, damping: float = 0.85) -> np.ndarray:
    n = g.node_count
    adjacency = g.adjacency_matrix().toarray()
    degree = adjacency.sum(axis=1)
    transition = np.where(degree[:, None] > 0, adjacency / np.maximum(degree, 1)[:, None], 1.0 / n)
    google = damping * transition.T + (1.0 - damping) / n
    x = np.full(n, 1.0 / n)
    for _ in range(5000):
        x = google @ x
    return x / x.sum()


def bfs_collective_influence(g: AttributedGraph, radius: int) -> list[int]:
    nx_graph = g.to_networkx()
    scores = []
    for v in range(g.node_count):
        distances = nx.single_source_shortest_path_length(nx_graph, v, cutoff=radius)
        boundary = [u for u, d in distances.items() if d == radius]
        scores.append((g.degree(v) - 1) * sum(g.degree(u) - 1 for u in boundary))
    return scores


# ===== SCORES =====


def test_pagerank_on_cycle_is_uniform():
    cycle = AttributedGraph([0, 1, 0, 1], [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert np.allclose(pagerank(cycle), 0.25)


def test_pagerank_single_node():
    assert pagerank(AttributedGraph([0])).tolist() == [1.0]


def test_pagerank_path_centre_is_greatest():
    scores = pagerank(AttributedGraph([0, 1, 0], [(0, 1), (1, 2)]))
    assert scores[1] > scores[0]
    assert scores[0] == pytest.approx(scores[2])


def test_pagerank_matches_dense_oracle():
    rng = np.random.default_rng(2024)
    for _ in range(30):
        g = random_graph(rng, 20)
        assert np.abs(pagerank(g, tol=1e-12) - dense_pagerank(g)).sum() < 1e-6


@pytest.mark.parametrize("damping, tol", [(0.85, 1e-6), (0.5, 1e-9)])
def test_pagerank_is_a_distribution_above_teleport_floor(damping, tol):
    g = generate(GeneratorConfig(nodes=500, m=3, homophily=0.7, rng_seed=4))
    scores = pagerank(g, damping=damping, tol=tol)
    assert abs(scores.sum() - 1.0) <= 10 * tol
    assert scores.min() >= (1.0 - damping) / g.node_count - tol


def test_collective_influence_examples():
    path5 = AttributedGraph([0, 1, 0, 1, 0], [(0, 1), (1, 2), (2, 3), (3, 4)])
    scores = collective_influence(path5, radius=2)
    assert scores[2] == 0
    assert scores[1] == 1
    assert scores[0] == 0

    isolated = AttributedGraph([0, 1, 0], [(0, 1)])
    assert collective_influence(isolated, radius=2)[2] == 0


def test_collective_influence_matches_bfs_oracle():
    rng = np.random.default_rng(7)
    for _ in range(100):
        g = random_graph(rng, 30)
        radius = int(rng.integers(1, 4))
        assert collective_influence(g, radius).tolist() == bfs_collective_influence(g, radius)


def test_rank_nodes_breaks_ties_by_id():
    scores = np.array([1.0, 3.0, 3.0, 0.5, 1.0])
    assert rank_nodes(scores, descending=True).tolist() == [1, 2, 0, 4, 3]
    assert rank_nodes(scores, descending=False).tolist() == [3, 0, 4, 1, 2]


# ===== STRATEGIES =====


def test_target_size_rounding():
    assert target_size(2000, 0.1) == 200
    assert target_size(2000, 0.05) == 100
    assert target_size(7, 0.5) == 4
    with pytest.raises(InputError, match="empty"):
        target_size(10, 0.05)


@pytest.mark.parametrize("method", SAMPLER_METHODS)
def test_full_sample_is_every_node(example_network, method):
    seeds = sample(example_network, SamplerSpec(method=method, p=1.0))
    assert seeds.node_ids == frozenset(range(6))


@pytest.mark.parametrize("method", SAMPLER_METHODS)
@pytest.mark.parametrize("p", [0.05, 0.2, 0.5, 0.9])
def test_exact_size_and_determinism(method, p):
    g = generate(GeneratorConfig(nodes=120, m=2, homophily=0.6, rng_seed=4))
    spec = SamplerSpec(method=method, p=p, rng_seed=13)
    first, second = sample(g, spec), sample(g, spec)
    assert len(first) == math.ceil(round(p * 120, 9))
    assert first == second
    assert first.order == second.order


def test_star_degree_rankings(star):
    assert sample(star, SamplerSpec(method="degreeDESC", p=0.2)).node_ids == {0}
    assert sample(star, SamplerSpec(method="degreeASC", p=0.2)).node_ids == {1}


@pytest.mark.parametrize("p", [0.05, 0.3, 0.7])
def test_degree_desc_takes_the_highest_degrees(p):
    g = generate(GeneratorConfig(nodes=400, m=2, homophily=0.3, rng_seed=9))
    mask = sample(g, SamplerSpec(method="degreeDESC", p=p)).mask(g.node_count)
    degrees = g.degrees()
    assert degrees[mask].min() >= degrees[~mask].max()


def test_degree_mix_takes_both_ends(star):
    seeds = sample(star, SamplerSpec(method="degreeMIX", p=0.4))
    assert seeds.node_ids == {0, 1}


def test_nedges_single_edge():
    g = AttributedGraph([0, 1] * 5, [(0, 1)])
    seeds = sample(g, SamplerSpec(method="nedges", p=0.2, rng_seed=3))
    assert seeds.node_ids == {0, 1}


def test_nedges_tops_up_when_edges_run_out():
    g = AttributedGraph([0, 1] * 5, [(0, 1)])
    seeds = sample(g, SamplerSpec(method="nedges", p=0.5, rng_seed=3))
    assert len(seeds) == 5
    assert {0, 1} <= seeds.node_ids


def test_snowball_stays_connected_on_connected_graph():
    g = generate(GeneratorConfig(nodes=200, m=2, rng_seed=8))
    seeds = sample(g, SamplerSpec(method="snowball", p=0.1, rng_seed=2))
    sub, _ = g.induced_subgraph(seeds.node_ids)
    assert nx.is_connected(sub.to_networkx())


def test_snowball_restarts_on_disconnected_graph():
    g = AttributedGraph([0, 1, 0, 1, 0, 1], [(0, 1), (2, 3), (4, 5)])
    seeds = sample(g, SamplerSpec(method="snowball", p=1.0, rng_seed=1))
    assert len(seeds) == 6


def test_sampling_rejects_tiny_inputs():
    with pytest.raises(InputError):
        sample(AttributedGraph([0]), SamplerSpec(method="nodes", p=1.0))
    with pytest.raises(InputError, match="empty"):
        sample(AttributedGraph([0, 1, 0], [(0, 1)]), SamplerSpec(method="nodes", p=0.1))


@pytest.mark.parametrize("kwargs", [
    {"method": "random_walk", "p": 0.1},
    {"method": "nodes", "p": 0.0},
    {"method": "nodes", "p": 1.2},
    {"method": "pagerankDESC", "p": 0.1, "pagerank_damping": 1.0},
    {"method": "percolationDESC", "p": 0.1, "ci_radius": 0},
])
def test_invalid_sampler_specs(kwargs):
    with pytest.raises(InputError):
        SamplerSpec(**kwargs)


def test_seed_set_mask(star):
    seeds = sample(star, SamplerSpec(method="degreeDESC", p=0.4))
    assert seeds.mask(5).tolist() == [True, True, False, False, False]
