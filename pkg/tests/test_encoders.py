import random

import pytest

from gfvs.brute import brute_gfvs, simple_cycles
from gfvs.encoders import (
    EsfvsInstance,
    apply_forbidden_gadget,
    decode_solution,
    encode_esfvs,
    encode_fvs,
    encode_mwc,
    encode_oct,
)
from gfvs.errors import UsageError
from gfvs.graph import GfvsInstance, LabeledGraph, is_solution
from gfvs.groups import CyclicGroup
from gfvs.solver import solve

from conftest import esfvs_optimum, fvs_optimum, mwc_optimum, oct_optimum, random_simple_graph

TRIANGLE = [(0, 1), (1, 2), (0, 2)]
K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def optimum(inst):
    X = solve(inst)
    return None if X is None else len(X)


def test_esfvs_without_special_edges():
    inst = encode_esfvs(EsfvsInstance(4, K4, [], 0))
    assert all(g.is_identity() for _, _, g in inst.graph.arcs())
    assert solve(inst) == set()


def test_esfvs_single_special_edge():
    inst = encode_esfvs(EsfvsInstance(3, TRIANGLE, [(1, 2)], 1))
    assert inst.graph.cycle_value([0, 1, 2]).payload == (1,)
    assert optimum(inst) == 1


def test_esfvs_rejects_foreign_special_edge():
    with pytest.raises(UsageError):
        EsfvsInstance(3, [(0, 1)], [(1, 2)], 1)


def test_fvs_examples():
    forest = encode_fvs(5, [(0, 1), (1, 2), (1, 3), (3, 4)], 0)
    assert solve(forest) == set()
    assert optimum(encode_fvs(3, TRIANGLE, 1)) == 1
    assert fvs_optimum(4, K4, 2) == 2
    assert optimum(encode_fvs(4, K4, 2)) == 2
    assert solve(encode_fvs(4, K4, 1)) is None


def test_fvs_parallel_edges_are_subdivided():
    inst = encode_fvs(2, [(0, 1), (0, 1)], 1)
    assert len(inst.graph) == 3
    X = solve(inst)
    assert len(X) == 1 and decode_solution(inst, X) <= {0, 1}
    with pytest.raises(UsageError):
        encode_fvs(2, [(0, 0)], 1)


def test_oct_examples():
    square = encode_oct(4, [(0, 1), (1, 2), (2, 3), (3, 0)], 0)
    assert is_solution(square.graph, [])
    c5 = encode_oct(5, [(i, (i + 1) % 5) for i in range(5)], 1)
    assert optimum(c5) == 1
    assert solve(GfvsInstance(c5.graph, 0)) is None


def test_mwc_examples():
    # terminals 0 and 2 joined through vertex 1
    inst = encode_mwc(3, [(0, 1), (1, 2)], [0, 2], 1)
    X = solve(inst)
    assert decode_solution(inst, X) == {1}
    split = encode_mwc(4, [(0, 1), (2, 3)], [0, 2], 0)
    assert solve(split) == set()


def test_mwc_adjacent_terminals_are_infeasible():
    inst = encode_mwc(3, [(0, 1), (1, 2)], [0, 1], 2)
    assert solve(inst) is None


def test_mwc_needs_two_terminals():
    with pytest.raises(UsageError):
        encode_mwc(3, [(0, 1)], [0], 1)


def test_forbidden_gadget_examples():
    Z2 = CyclicGroup(2)
    tri = LabeledGraph.with_vertices(Z2, 3)
    for u, v in TRIANGLE:
        tri.add_edge(u, v, Z2.element(1))
    base = GfvsInstance(tri, 1)
    same = apply_forbidden_gadget(base, [])
    assert same.graph.edges() == tri.edges()

    gadget = apply_forbidden_gadget(base, [0])
    assert len(gadget.graph) == 4
    X = solve(gadget)
    assert len(X) == 1 and decode_solution(gadget, X) <= {1, 2}
    assert brute_gfvs(gadget) is not None

    c5 = LabeledGraph.with_vertices(Z2, 5)
    for i in range(5):
        c5.add_edge(i, (i + 1) % 5, Z2.element(1))
    everything = apply_forbidden_gadget(GfvsInstance(c5, 5), range(5))
    assert brute_gfvs(GfvsInstance(everything.graph.induced(range(5)), 5)) is not None
    assert solve(everything) is None


def test_forbidden_gadget_matches_restricted_brute_force():
    rng = random.Random(5)
    Z3 = CyclicGroup(3)
    for _ in range(60):
        n = rng.randint(2, 6)
        graph = LabeledGraph.with_vertices(Z3, n)
        for u, v in random_simple_graph(n, rng.randint(1, 9), rng):
            graph.add_edge(u, v, Z3.random(rng))
        k = rng.randint(0, 2)
        forbidden = set(rng.sample(range(n), rng.randint(1, n - 1)))
        allowed = [v for v in range(n) if v not in forbidden]
        expected = None
        for size in range(k + 1):
            from itertools import combinations

            hits = [X for X in combinations(allowed, size) if is_solution(graph, X)]
            if hits:
                expected = size
                break
        inst = apply_forbidden_gadget(GfvsInstance(graph, k), forbidden)
        X = solve(inst)
        assert (None if X is None else len(X)) == expected
        if X is not None:
            assert not decode_solution(inst, X) & forbidden


def test_special_cycles_are_exactly_the_non_null_ones():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(3, 7)
        edges = random_simple_graph(n, rng.randint(3, 12), rng)
        special = rng.sample(edges, rng.randint(0, min(3, len(edges))))
        inst = encode_esfvs(EsfvsInstance(n, edges, special, 1))
        sset = {frozenset(e) for e in special}
        for cycle in simple_cycles(inst.graph):
            pairs = {frozenset(p) for p in zip(cycle, cycle[1:] + cycle[:1])}
            uses_special = bool(pairs & sset)
            assert uses_special != inst.graph.cycle_value(cycle).is_identity()


@pytest.mark.parametrize("seed", range(3))
def test_oct_round_trip(seed):
    rng = random.Random(seed)
    for _ in range(30):
        n = rng.randint(1, 9)
        edges = random_simple_graph(n, rng.randint(0, 14), rng)
        k = rng.randint(0, 3)
        assert optimum(encode_oct(n, edges, k)) == oct_optimum(n, edges, k)


@pytest.mark.parametrize("seed", range(3))
def test_esfvs_round_trip(seed):
    rng = random.Random(100 + seed)
    for _ in range(30):
        n = rng.randint(1, 8)
        edges = random_simple_graph(n, rng.randint(0, 12), rng)
        special = rng.sample(edges, rng.randint(0, min(3, len(edges))))
        k = rng.randint(0, 3)
        inst = encode_esfvs(EsfvsInstance(n, edges, special, k))
        assert optimum(inst) == esfvs_optimum(n, edges, special, k)
        if n <= 8:
            X = brute_gfvs(inst)
            assert (None if X is None else len(X)) == esfvs_optimum(n, edges, special, k)


@pytest.mark.parametrize("seed", range(3))
def test_fvs_round_trip(seed):
    rng = random.Random(200 + seed)
    for _ in range(30):
        n = rng.randint(1, 8)
        edges = random_simple_graph(n, rng.randint(0, 12), rng)
        k = rng.randint(0, 3)
        inst = encode_fvs(n, edges, k)
        X = solve(inst)
        assert (None if X is None else len(X)) == fvs_optimum(n, edges, k)


@pytest.mark.parametrize("seed", range(3))
def test_mwc_round_trip(seed):
    rng = random.Random(300 + seed)
    for _ in range(30):
        n = rng.randint(2, 9)
        edges = random_simple_graph(n, rng.randint(0, 13), rng)
        terminals = rng.sample(range(n), rng.randint(2, min(3, n)))
        k = rng.randint(0, 3)
        inst = encode_mwc(n, edges, terminals, k)
        X = solve(inst)
        assert (None if X is None else len(X)) == mwc_optimum(n, edges, terminals, k)
        if X is not None:
            assert mwc_optimum(n, [e for e in edges if not set(e) & decode_solution(inst, X)], terminals, 0) == 0
