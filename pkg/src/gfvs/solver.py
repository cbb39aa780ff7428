"""Group Feedback Vertex Set by iterative compression."""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

from .compression import CompressionInstance, solve_compression
from .errors import UsageError
from .graph import GfvsInstance, LabeledGraph, NonNullWitness, find_consistent_labeling, is_solution


def threads_from_env() -> int:
    value = os.environ.get("GFVS_THREADS", "").strip()
    if not value:
        return 0
    try:
        threads = int(value)
    except ValueError:
        raise UsageError(f"GFVS_THREADS must be an integer, got {value!r}") from None
    return max(threads, 0)


def compress_subsets(Z):
    """Subsets of ``Z`` kept out of the new solution: largest first, then lexicographic."""
    Z = sorted(Z)
    for size in range(len(Z), -1, -1):
        yield from combinations(Z, size)


def iterative_compression(graph: LabeledGraph, k: int, threads: int = 0, trace=None):
    """A solution of size <= k, or ``None``.

    Vertices are inserted in ascending id order.  ``trace``, if given, is
    called with ``(prefix, solution)`` after every step.
    """
    if k < 0:
        return None
    prefix = []
    X: set = set()
    for v in graph.vertices:
        prefix.append(v)
        current = graph.induced(prefix)
        if not is_solution(current, X):
            Z = X | {v}
            if len(Z) <= k:
                X = Z
            else:
                X = _compress_step(current, Z, threads)
                if X is None:
                    return None
        if trace is not None:
            trace(list(prefix), set(X))
    return X


def _compress_step(current: LabeledGraph, Z: set, threads: int):
    for kept in compress_subsets(Z):
        dropped = Z - set(kept)
        inst = CompressionInstance(current.delete_vertices(dropped), len(kept) - 1, list(kept))
        found = solve_compression(inst, threads)
        if found is not None:
            return dropped | found
    return None


def solve(inst: GfvsInstance, minimize: bool = True, threads: int | None = None):
    """Solution of size <= k as a set, or ``None`` if there is none.

    With ``minimize`` the budget is lowered below each solution found until
    the compression fails, so the returned set has minimum size.
    """
    if threads is None:
        threads = threads_from_env()
    best = iterative_compression(inst.graph, inst.k, threads)
    if best is None or not minimize:
        return best
    while best:
        smaller = iterative_compression(inst.graph, len(best) - 1, threads)
        if smaller is None:
            break
        best = smaller
    return best


@dataclass
class Verification:
    ok: bool
    reason: str = ""
    witness: NonNullWitness | None = None


def verify(inst: GfvsInstance, X) -> Verification:
    X = set(X)
    unknown = sorted(v for v in X if v not in inst.graph)
    if unknown:
        raise UsageError(f"solution mentions unknown vertices {unknown}")
    if len(X) > inst.k:
        return Verification(False, f"budget exceeded: |X|={len(X)} > k={inst.k}")
    result = find_consistent_labeling(inst.graph.delete_vertices(X))
    if isinstance(result, NonNullWitness):
        return Verification(False, "non-null cycle remains", result)
    return Verification(True)
