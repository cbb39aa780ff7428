"""Group-labeled graphs.

A :class:`LabeledGraph` stores, for every ordered pair ``(u, v)`` joined by an
edge, the label of the arc ``u -> v``.  Arcs always come in pairs whose labels
are mutually inverse, so the structure is really an undirected simple graph
with an orientation-dependent label.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import UsageError
from .groups import Group, GroupElement


@dataclass(frozen=True)
class NonNullWitness:
    """A simple cycle ``cycle[0] -> cycle[1] -> ... -> cycle[0]`` with non-identity value."""

    cycle: tuple
    value: GroupElement


class LabeledGraph:
    def __init__(self, group: Group, vertices=()):
        self.group = group
        self._out: dict[int, dict[int, GroupElement]] = {}
        for v in vertices:
            self.add_vertex(v)

    @classmethod
    def with_vertices(cls, group: Group, n: int) -> LabeledGraph:
        return cls(group, range(n))

    def add_vertex(self, v: int):
        self._out.setdefault(v, {})

    def add_edge(self, u: int, v: int, g: GroupElement):
        """Insert arc ``u -> v`` labeled ``g`` and its reverse labeled ``g^-1``."""
        if u == v:
            raise UsageError(f"self-loop at vertex {u}")
        self.group._own(g)
        self.add_vertex(u)
        self.add_vertex(v)
        if v in self._out[u]:
            raise UsageError(f"duplicate arc ({u}, {v})")
        self._out[u][v] = g
        self._out[v][u] = self.group.inv(g)

    @property
    def vertices(self) -> list[int]:
        return sorted(self._out)

    def __contains__(self, v) -> bool:
        return v in self._out

    def __len__(self) -> int:
        return len(self._out)

    def has_arc(self, u: int, v: int) -> bool:
        return u in self._out and v in self._out[u]

    def label(self, u: int, v: int) -> GroupElement:
        try:
            return self._out[u][v]
        except KeyError:
            raise UsageError(f"no arc ({u}, {v})") from None

    def out_arcs(self, u: int):
        """``(v, label)`` pairs for arcs leaving ``u``, by ascending ``v``."""
        arcs = self._out[u]
        return [(v, arcs[v]) for v in sorted(arcs)]

    def neighbors(self, u: int) -> list[int]:
        return sorted(self._out[u])

    def degree(self, u: int) -> int:
        return len(self._out[u])

    def arcs(self):
        for u in self.vertices:
            for v, g in self.out_arcs(u):
                yield u, v, g

    def edges(self):
        """Each pair once, as ``(u, v, label of u -> v)`` with ``u < v``."""
        return [(u, v, g) for u, v, g in self.arcs() if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self._out.values()) // 2

    def copy(self) -> LabeledGraph:
        other = LabeledGraph(self.group)
        other._out = {u: dict(arcs) for u, arcs in self._out.items()}
        return other

    def induced(self, keep) -> LabeledGraph:
        keep = set(keep)
        other = LabeledGraph(self.group)
        other._out = {
            u: {v: g for v, g in arcs.items() if v in keep}
            for u, arcs in self._out.items()
            if u in keep
        }
        return other

    def delete_vertices(self, removed) -> LabeledGraph:
        removed = set(removed)
        return self.induced(v for v in self._out if v not in removed)

    def relabeled(self, mapping) -> LabeledGraph:
        """Copy of the graph with vertex ``v`` renamed to ``mapping[v]``."""
        other = LabeledGraph(self.group)
        other._out = {
            mapping[u]: {mapping[v]: g for v, g in arcs.items()}
            for u, arcs in self._out.items()
        }
        return other

    def components(self) -> list[list[int]]:
        seen = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            comp = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v in self._out[u]:
                    if v not in seen:
                        seen.add(v)
                        comp.append(v)
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    def walk_value(self, walk) -> GroupElement:
        """Product of arc labels along an open walk."""
        group = self.group
        value = group.identity()
        for u, v in zip(walk, walk[1:]):
            value = group.mul(value, self.label(u, v))
        return value

    def cycle_value(self, cycle) -> GroupElement:
        """Product of arc labels around a closed walk.

        ``cycle`` lists the vertices once; a trailing copy of the first vertex
        is accepted and ignored.
        """
        cycle = list(cycle)
        if len(cycle) > 1 and cycle[-1] == cycle[0]:
            cycle.pop()
        if not cycle:
            return self.group.identity()
        return self.walk_value(cycle + cycle[:1])

    def __repr__(self):
        return (
            f"LabeledGraph({self.group.descriptor()!r}, n={len(self)}, m={self.num_edges})"
        )


def simple_nonnull_subcycle(graph: LabeledGraph, walk) -> NonNullWitness:
    """Shrink a non-null closed walk to a simple non-null cycle inside it.

    At a repeated vertex the walk splits into an inner loop and the outer
    remainder; if the loop is null, the remainder carries the whole value.
    """
    walk = list(walk)
    group = graph.group
    if group.is_identity(graph.cycle_value(walk)):
        raise UsageError("closed walk is null")
    while True:
        first = {}
        split = None
        for j, v in enumerate(walk):
            if v in first:
                split = first[v], j
                break
            first[v] = j
        if split is None:
            return NonNullWitness(tuple(walk), graph.cycle_value(walk))
        i, j = split
        inner = walk[i:j]
        if not group.is_identity(graph.cycle_value(inner)):
            walk = inner
        else:
            walk = walk[:i] + walk[j:]


def find_consistent_labeling(graph: LabeledGraph):
    """Return a consistent labeling (dict vertex -> element) or a NonNullWitness.

    Labels are propagated by BFS from the smallest vertex of each component,
    which receives the identity.  The first arc that contradicts the
    propagated labels closes a non-null walk through the BFS tree.
    """
    group = graph.group
    labels: dict[int, GroupElement] = {}
    parent: dict[int, int | None] = {}
    for root in graph.vertices:
        if root in labels:
            continue
        labels[root] = group.identity()
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            lu = labels[u]
            for v, g in graph.out_arcs(u):
                expected = group.mul(lu, g)
                if v not in labels:
                    labels[v] = expected
                    parent[v] = u
                    queue.append(v)
                elif not group.eq(labels[v], expected):
                    return simple_nonnull_subcycle(graph, _tree_walk(parent, u, v))
    return labels


def _tree_walk(parent, u, v):
    # root .. u, then v .. (back to root, exclusive)
    to_u = []
    x = u
    while x is not None:
        to_u.append(x)
        x = parent[x]
    from_v = []
    x = v
    while parent[x] is not None:
        from_v.append(x)
        x = parent[x]
    if not from_v:
        # v is the root itself
        return to_u[::-1]
    return to_u[::-1] + from_v


def is_consistent(graph: LabeledGraph, labels) -> bool:
    """Check ``labels(v) == labels(u) * label(u, v)`` on every arc with both ends labeled."""
    group = graph.group
    for u, v, g in graph.arcs():
        if u in labels and v in labels:
            if not group.eq(labels[v], group.mul(labels[u], g)):
                return False
    return True


def is_solution(graph: LabeledGraph, removed) -> bool:
    reduced = graph.delete_vertices(removed)
    return not isinstance(find_consistent_labeling(reduced), NonNullWitness)


@dataclass
class GfvsInstance:
    """A GFVS instance ``(graph, k)``.

    ``origin`` is filled in by encoders: it maps each vertex to the source
    problem's vertex it stands for, or to ``None`` if deleting it has no
    meaning there (gadget copies of undeletable vertices).
    """

    graph: LabeledGraph
    k: int
    origin: dict | None = field(default=None, repr=False)

    @property
    def group(self) -> Group:
        return self.graph.group
