"""Exhaustive reference solvers.

Candidate sets are tried by increasing size, lexicographically within a size,
so the first hit is a lexicographically smallest optimum.  These exist to
check the real solvers on small inputs and refuse anything above
``MAX_VERTICES`` vertices.
"""
from __future__ import annotations

from itertools import combinations

from .errors import UsageError
from .graph import GfvsInstance, LabeledGraph, is_solution
from .multiway_cut import MwcInstance, separates

MAX_VERTICES = 20


def _guard(n):
    if n > MAX_VERTICES:
        raise UsageError(f"brute force limited to {MAX_VERTICES} vertices, got {n}")


def _first(candidates, k, ok):
    for size in range(min(k, len(candidates)) + 1):
        for subset in combinations(candidates, size):
            if ok(subset):
                return set(subset)
    return None


def brute_gfvs(inst: GfvsInstance):
    graph = inst.graph
    _guard(len(graph))
    if inst.k < 0:
        return None
    return _first(graph.vertices, inst.k, lambda X: is_solution(graph, X))


def brute_restricted_gfvs(inst):
    """Like :func:`brute_gfvs` but only over sets disjoint from ``inst.Z``."""
    graph = inst.graph
    _guard(len(graph))
    if inst.k < 0:
        return None
    zset = set(inst.Z)
    candidates = [v for v in graph.vertices if v not in zset]
    return _first(candidates, inst.k, lambda X: is_solution(graph, X))


def all_restricted_solutions(inst):
    """Every set disjoint from ``inst.Z`` of size <= k that is a solution."""
    graph = inst.graph
    _guard(len(graph))
    zset = set(inst.Z)
    candidates = [v for v in graph.vertices if v not in zset]
    out = []
    for size in range(min(inst.k, len(candidates)) + 1):
        for subset in combinations(candidates, size):
            if is_solution(graph, subset):
                out.append(set(subset))
    return out


def brute_mwc(inst: MwcInstance):
    _guard(len(inst.adj))
    if inst.k < 0:
        return None
    terminals = set(inst.terminals)
    candidates = [v for v in sorted(inst.adj) if v not in terminals]
    return _first(candidates, inst.k, lambda X: separates(inst.adj, terminals, X))


def simple_cycles(graph: LabeledGraph):
    """Yield every simple cycle (length >= 3) once, as a vertex tuple.

    Each cycle starts at its smallest vertex and its second vertex is smaller
    than its last, which fixes one of the two traversal directions.
    """
    for start in graph.vertices:
        path = [start]
        on_path = {start}

        def extend():
            u = path[-1]
            for v in graph.neighbors(u):
                if v == start and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif v > start and v not in on_path:
                    path.append(v)
                    on_path.add(v)
                    yield from extend()
                    path.pop()
                    on_path.discard(v)

        yield from extend()


def has_nonnull_cycle(graph: LabeledGraph) -> bool:
    group = graph.group
    return any(not group.is_identity(graph.cycle_value(c)) for c in simple_cycles(graph))
