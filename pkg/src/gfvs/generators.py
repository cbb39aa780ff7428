"""Random instance generators for tests and ``gfvs bench``."""
from __future__ import annotations

import random

from .compression import CompressionInstance
from .graph import GfvsInstance, LabeledGraph


def random_pairs(n: int, m: int, rng: random.Random) -> list:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return rng.sample(pairs, min(m, len(pairs)))


def random_labeled_graph(group, n: int, m: int, rng: random.Random, identity_rate: float = 0.2):
    """``n`` vertices, ``m`` random edges, random labels (some forced to the identity)."""
    graph = LabeledGraph.with_vertices(group, n)
    for u, v in random_pairs(n, m, rng):
        if rng.random() < identity_rate:
            graph.add_edge(u, v, group.identity())
        else:
            graph.add_edge(u, v, group.random(rng))
    return graph


def _consistent_except(group, n, m, special, rng):
    # arcs avoiding `special` follow a hidden vertex labeling; the rest are random
    hidden = {v: group.random(rng) for v in range(n)}
    graph = LabeledGraph.with_vertices(group, n)
    for u, v in random_pairs(n, m, rng):
        if u in special or v in special:
            graph.add_edge(u, v, group.random(rng))
        else:
            graph.add_edge(u, v, group.mul(group.inv(hidden[u]), hidden[v]))
    return graph


def planted_instance(group, n: int, m: int, k: int, rng: random.Random) -> GfvsInstance:
    """A YES-instance: removing some k random vertices leaves no non-null cycle."""
    planted = set(rng.sample(range(n), min(k, n)))
    return GfvsInstance(_consistent_except(group, n, m, planted, rng), k)


def random_compression_instance(group, n: int, m: int, z_size: int, k: int, rng: random.Random):
    Z = rng.sample(range(n), min(z_size, n))
    return CompressionInstance(_consistent_except(group, n, m, set(Z), rng), k, Z)
