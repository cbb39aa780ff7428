"""Vertex Multiway Cut with undeletable terminals.

The solver branches over important separators: some optimal solution
contains an important separator between the first terminal and all the
others, so it suffices to try each of them and recurse on the remaining
terminals.  Important separators of size at most k are enumerated by the
classic furthest-minimum-cut branching, which has at most 4^k leaves.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

_INF = 1 << 30


@dataclass
class MwcInstance:
    adj: dict
    terminals: list
    k: int

    @classmethod
    def from_edges(cls, n, edges, terminals, k) -> MwcInstance:
        return cls(adjacency(range(n), edges), sorted(set(terminals)), k)

    @property
    def vertices(self):
        return sorted(self.adj)


def adjacency(vertices, edges) -> dict:
    adj = {v: set() for v in vertices}
    for u, v in edges:
        if u == v:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


class _SplitFlow:
    """Unit-capacity vertex flow from ``sources`` to ``sinks``.

    Every vertex outside ``sources | sinks | removed`` is split into an
    in-node and an out-node joined by a capacity-1 arc; sources and sinks are
    contracted into one super node each and are never cut.
    """

    def __init__(self, adj, sources, sinks, removed=()):
        self.direct = False
        removed = set(removed)
        self.index = {}
        for v in adj:
            if v not in sources and v not in sinks and v not in removed:
                self.index[v] = len(self.index)
        size = 2 + 2 * len(self.index)
        self.head = [[] for _ in range(size)]
        self.to = []
        self.cap = []
        for v, i in self.index.items():
            self._arc(2 + 2 * i, 3 + 2 * i, 1)
        for u, nbrs in adj.items():
            if u in removed or u in sinks:
                continue
            tail = 0 if u in sources else 3 + 2 * self.index[u]
            for v in nbrs:
                if v in removed or v in sources:
                    continue
                if v in sinks:
                    if tail == 0:
                        self.direct = True
                        continue
                    head = 1
                else:
                    head = 2 + 2 * self.index[v]
                self._arc(tail, head, _INF)
        self.flow = 0

    def _arc(self, a, b, c):
        self.head[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(c)
        self.head[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    def augment(self, limit: int) -> int:
        """Push unit paths until the flow value reaches ``limit`` or is maximum."""
        if self.direct:
            self.flow = limit
            return self.flow
        to, cap, head = self.to, self.cap, self.head
        while self.flow < limit:
            pred = {0: -1}
            queue = deque([0])
            while queue and 1 not in pred:
                x = queue.popleft()
                for e in head[x]:
                    if cap[e] > 0 and to[e] not in pred:
                        pred[to[e]] = e
                        queue.append(to[e])
            if 1 not in pred:
                break
            x = 1
            while x != 0:
                e = pred[x]
                cap[e] -= 1
                cap[e ^ 1] += 1
                x = to[e ^ 1]
            self.flow += 1
        return self.flow

    def furthest_cut(self) -> list:
        """Minimum separator closest to the sinks (call after a maximum flow)."""
        to, cap, head = self.to, self.cap, self.head
        reach = {1}
        queue = deque([1])
        while queue:
            y = queue.popleft()
            for e in head[y]:
                x = to[e]
                if x not in reach and cap[e ^ 1] > 0:
                    reach.add(x)
                    queue.append(x)
        return sorted(
            v for v, i in self.index.items() if 2 + 2 * i not in reach and 3 + 2 * i in reach
        )


def min_vertex_cut(adj, sources, sinks, cap: int, removed=()) -> int:
    """Size of a minimum vertex set separating ``sources`` from ``sinks``.

    Only vertices outside both sets may be deleted.  Values above ``cap``
    (including the uncuttable case of an edge between the two sets) are
    reported as ``cap + 1``.
    """
    net = _SplitFlow(adj, set(sources), set(sinks), removed)
    return min(net.augment(cap + 1), cap + 1)


def _reach(adj, start, removed):
    seen = set(start)
    queue = deque(start)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen and v not in removed:
                seen.add(v)
                queue.append(v)
    return seen


def important_separators(adj, sources, sinks, k: int, removed=frozenset(), stats=None):
    """Yield vertex separators of size <= k between ``sources`` and ``sinks``.

    The output contains every important separator (possibly with some
    non-important ones); each yielded set is a frozenset disjoint from both
    sides and from ``removed``.
    """
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + 1
    net = _SplitFlow(adj, sources, sinks, removed)
    if net.augment(k + 1) > k:
        return
    if net.flow == 0:
        yield frozenset()
        return
    cut = net.furthest_cut()
    # Every important separator lies beyond the furthest minimum cut.
    region = _reach(adj, sources, set(removed) | set(cut))
    v = cut[0]
    for sep in important_separators(adj, region, sinks, k - 1, removed | {v}, stats):
        yield sep | {v}
    yield from important_separators(adj, region | {v}, sinks, k, removed, stats)


def separates(adj, terminals, removed) -> bool:
    """Flood-fill check that no two terminals share a component after deletion."""
    removed = set(removed)
    terminals = set(terminals)
    if terminals & removed:
        return False
    seen = set()
    for t in sorted(terminals):
        if t in seen:
            return False
        comp = _reach(adj, [t], removed)
        if len(comp & terminals) > 1:
            return False
        seen |= comp
    return True


def solve_mwc(inst: MwcInstance, stats=None):
    """Return a multiway cut of size <= k avoiding terminals, or ``None``."""
    adj = inst.adj
    terminals = sorted(set(inst.terminals))
    if inst.k < 0:
        return None
    for t in terminals:
        if adj[t] & set(terminals):
            return None
    return _branch(adj, frozenset(), terminals, inst.k, stats)


def _branch(adj, removed, terminals, k, stats):
    if len(terminals) <= 1:
        return set()
    t, rest = terminals[0], terminals[1:]
    for sep in important_separators(adj, {t}, set(rest), k, removed, stats):
        sub = _branch(adj, removed | sep, rest, k - len(sep), stats)
        if sub is not None:
            return set(sep) | sub
    return None
