import random
from itertools import combinations

import networkx as nx
import pytest

from gfvs.groups import CyclicGroup, FreeGroup, PowerOfTwoGroup, SymmetricGroup

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)


def small_groups():
    return [PowerOfTwoGroup(1), CyclicGroup(3), PowerOfTwoGroup(2), SymmetricGroup(3), FreeGroup(5)]


class TracingFreeGroup(FreeGroup):
    """Free group that remembers the longest word it has produced."""

    def __init__(self, generators=None):
        super().__init__(generators)
        self.longest = 0

    def _note(self, word):
        self.longest = max(self.longest, len(word))
        return word

    def _mul(self, a, b):
        return self._note(super()._mul(a, b))

    def _inv(self, a):
        return self._note(super()._inv(a))


def random_simple_graph(n, m, rng):
    pairs = list(combinations(range(n), 2))
    return rng.sample(pairs, min(m, len(pairs)))


# Independent oracles for the classical problems, built on networkx.


def _min_deletion(n, k, feasible):
    for size in range(k + 1):
        for X in combinations(range(n), size):
            if feasible(set(X)):
                return size
    return None


def oct_optimum(n, edges, k):
    def ok(X):
        g = nx.Graph()
        g.add_nodes_from(v for v in range(n) if v not in X)
        g.add_edges_from((u, v) for u, v in edges if u not in X and v not in X)
        return nx.is_bipartite(g)

    return _min_deletion(n, k, ok)


def fvs_optimum(n, edges, k):
    def ok(X):
        g = nx.MultiGraph()
        g.add_nodes_from(v for v in range(n) if v not in X)
        g.add_edges_from((u, v) for u, v in edges if u not in X and v not in X)
        return nx.is_forest(g)

    return _min_deletion(n, k, ok)


def esfvs_optimum(n, edges, special, k):
    special = {frozenset(e) for e in special}

    def ok(X):
        g = nx.Graph()
        g.add_nodes_from(v for v in range(n) if v not in X)
        g.add_edges_from((u, v) for u, v in edges if u not in X and v not in X)
        bridges = {frozenset(e) for e in nx.bridges(g)}
        return all(e in bridges for e in map(frozenset, g.edges()) if e in special)

    return _min_deletion(n, k, ok)


def mwc_optimum(n, edges, terminals, k):
    terminals = set(terminals)

    def ok(X):
        if X & terminals:
            return False
        g = nx.Graph()
        g.add_nodes_from(v for v in range(n) if v not in X)
        g.add_edges_from((u, v) for u, v in edges if u not in X and v not in X)
        return all(len(c & terminals) <= 1 for c in map(set, nx.connected_components(g)))

    return _min_deletion(n, k, ok)


# Oracles for the compression step.


def external_path_values(graph, Z, z1, z2):
    """Values of all paths z1 -> z2 whose interior avoids Z, deduplicated by ``eq``."""
    zset = set(Z)
    group = graph.group
    found = []

    def walk(path):
        u = path[-1]
        for v in graph.neighbors(u):
            if v == z2:
                value = graph.walk_value(path + [v])
                if not any(group.eq(value, g) for g in found):
                    found.append(value)
            elif v not in zset and v not in path:
                walk(path + [v])

    walk([z1])
    return found


def forests(Z):
    """Every forest on vertex set Z, as a list of edges (z1, z2) with z1 < z2."""
    pairs = list(combinations(sorted(Z), 2))
    out = []

    def grow(i, chosen, parent):
        if i == len(pairs):
            out.append(list(chosen))
            return
        grow(i + 1, chosen, parent)
        a, b = pairs[i]

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ra, rb = find(a), find(b)
        if ra != rb:
            merged = dict(parent)
            merged[ra] = rb
            grow(i + 1, chosen + [(a, b)], merged)

    grow(0, [], {z: z for z in Z})
    return out


def naive_labelings(group, Z, table):
    """Labelings from every forest, rooted at minimum vertices, propagated along all values.

    Returned as a set of payload tuples ordered like ``sorted(Z)``.
    """
    Z = sorted(Z)
    result = set()
    for forest in forests(Z):
        nbrs = {z: [] for z in Z}
        for a, b in forest:
            nbrs[a].append(b)
            nbrs[b].append(a)
        order = []  # (child, parent) in BFS order
        seen = set()
        for root in Z:
            if root in seen:
                continue
            seen.add(root)
            queue = [root]
            order.append((root, None))
            while queue:
                u = queue.pop(0)
                for w in sorted(nbrs[u]):
                    if w not in seen:
                        seen.add(w)
                        order.append((w, u))
                        queue.append(w)

        def assign(i, phi):
            if i == len(order):
                result.add(tuple(phi[z].payload for z in Z))
                return
            child, parent = order[i]
            if parent is None:
                assign(i + 1, {**phi, child: group.identity()})
                return
            for g in table.get((parent, child), []):
                assign(i + 1, {**phi, child: group.mul(phi[parent], g)})

        assign(0, {})
    return result
