"""Reductions from classical deletion problems to Group Feedback Vertex Set.

Every encoder returns a :class:`GfvsInstance` whose ``origin`` maps new
vertices back to the source problem; :func:`decode_solution` uses it to turn
a GFVS solution into a solution of the source problem.

The labeled graph has no parallel arcs, so a repeated edge is subdivided by a
fresh vertex and the label split as ``g`` then identity.  Deleting the fresh
vertex never does better than deleting the endpoint it hangs off, which is
what ``origin`` records for it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UsageError
from .graph import GfvsInstance, LabeledGraph
from .groups import CyclicGroup, PowerOfTwoGroup


@dataclass
class EsfvsInstance:
    n: int
    edges: list
    special: list = field(default_factory=list)
    k: int = 0

    def __post_init__(self):
        present = {frozenset(e) for e in self.edges}
        for u, v in self.special:
            if frozenset((u, v)) not in present:
                raise UsageError(f"special edge ({u}, {v}) is not an edge of the graph")


class _Builder:
    def __init__(self, group):
        self.graph = LabeledGraph(group)
        self.origin: dict = {}

    def vertex(self, origin) -> int:
        v = len(self.origin)
        self.graph.add_vertex(v)
        self.origin[v] = origin
        return v

    def edge(self, u, v, g, swap_to=None):
        """Add ``u - v`` labeled ``g``; subdivide if the pair is already joined."""
        group = self.graph.group
        if u == v:
            raise UsageError(f"self-loop at vertex {u}")
        if not self.graph.has_arc(u, v):
            self.graph.add_edge(u, v, g)
            return
        mid = self.vertex(self.origin[v] if swap_to is None else swap_to)
        self.graph.add_edge(u, mid, g)
        self.graph.add_edge(mid, v, group.identity())


def encode_esfvs(inst: EsfvsInstance) -> GfvsInstance:
    """Label the i-th special edge with the i-th basis vector of Z_2^|S|, others with 0."""
    special = [frozenset(e) for e in inst.special]
    index = {}
    for e in special:
        index.setdefault(e, len(index))
    group = PowerOfTwoGroup(max(len(index), 1))
    build = _Builder(group)
    for v in range(inst.n):
        build.vertex(v)
    for u, v in inst.edges:
        e = frozenset((u, v))
        g = group.basis(index[e]) if e in index else group.identity()
        build.edge(u, v, g)
    return GfvsInstance(build.graph, inst.k, build.origin)


def encode_fvs(n: int, edges, k: int) -> GfvsInstance:
    """Every edge special: each cycle sums distinct basis vectors, hence is non-null.

    Parallel edges are allowed and each copy gets its own basis vector.
    """
    edges = list(edges)
    group = PowerOfTwoGroup(max(len(edges), 1))
    build = _Builder(group)
    for v in range(n):
        build.vertex(v)
    for i, (u, v) in enumerate(edges):
        build.edge(u, v, group.basis(i))
    return GfvsInstance(build.graph, k, build.origin)


def encode_oct(n: int, edges, k: int) -> GfvsInstance:
    """Z_2 with every edge labeled 1: non-null cycles are exactly the odd ones."""
    group = CyclicGroup(2)
    graph = LabeledGraph.with_vertices(group, n)
    one = group.element(1)
    for u, v in edges:
        graph.add_edge(u, v, one)
    return GfvsInstance(graph, k, {v: v for v in range(n)})


def encode_mwc(n: int, edges, terminals, k: int) -> GfvsInstance:
    """Contract all terminals into one undeletable hub.

    The edge that joined terminal number ``i`` to ``v`` becomes a hub edge
    labeled ``i`` in Z_|T|; all other edges carry 0.  A cycle through the hub
    is non-null exactly when it leaves and re-enters through edges of two
    different terminals.  An edge between two terminals becomes a non-null
    triangle through two more undeletable vertices.
    """
    terminals = sorted(set(terminals))
    if len(terminals) < 2:
        raise UsageError("multiway cut needs at least two terminals")
    tindex = {t: i for i, t in enumerate(terminals)}
    group = CyclicGroup(len(terminals))
    build = _Builder(group)
    hub = build.vertex(None)
    new_id = {}
    for v in range(n):
        if v not in tindex:
            new_id[v] = build.vertex(v)
    forbidden = [hub]
    zero = group.identity()
    for u, v in edges:
        if u in tindex and v in tindex:
            if u == v:
                continue
            a, b = build.vertex(None), build.vertex(None)
            forbidden += [a, b]
            build.graph.add_edge(hub, a, group.element(tindex[u]))
            build.graph.add_edge(a, b, zero)
            build.graph.add_edge(b, hub, group.inv(group.element(tindex[v])))
        elif u in tindex or v in tindex:
            t, w = (u, v) if u in tindex else (v, u)
            build.edge(hub, new_id[w], group.element(tindex[t]), swap_to=w)
        else:
            build.edge(new_id[u], new_id[v], zero)
    inst = GfvsInstance(build.graph, k, build.origin)
    return apply_forbidden_gadget(inst, forbidden)


def apply_forbidden_gadget(inst: GfvsInstance, forbidden) -> GfvsInstance:
    """Make each vertex of ``forbidden`` undeletable.

    The vertex is replaced by k+1 copies forming an identity-labeled clique;
    every copy inherits the original's arcs to the rest of the graph.
    Copies (the original included) map to ``None`` in ``origin``.
    """
    forbidden = sorted(set(forbidden))
    missing = [v for v in forbidden if v not in inst.graph]
    if missing:
        raise UsageError(f"forbidden vertices {missing} not in graph")
    origin = dict(inst.origin) if inst.origin is not None else {v: v for v in inst.graph.vertices}
    if not forbidden:
        return GfvsInstance(inst.graph.copy(), inst.k, origin)
    graph = inst.graph.copy()
    group = graph.group
    next_id = max(graph.vertices) + 1
    for v in forbidden:
        copies = [v]
        for _ in range(inst.k):
            copies.append(next_id)
            graph.add_vertex(next_id)
            next_id += 1
        for c in copies:
            origin[c] = None
        # arcs of v towards the rest of the graph as it was before this vertex
        outside = [(u, g) for u, g in graph.out_arcs(v) if u not in copies]
        for c in copies[1:]:
            for u, g in outside:
                graph.add_edge(c, u, g)
        for i, a in enumerate(copies):
            for b in copies[i + 1 :]:
                graph.add_edge(a, b, group.identity())
    return GfvsInstance(graph, inst.k, origin)


def decode_solution(inst: GfvsInstance, X) -> set:
    """Map a GFVS solution of an encoded instance back to source vertices."""
    if inst.origin is None:
        return set(X)
    return {inst.origin[x] for x in X if inst.origin[x] is not None}
