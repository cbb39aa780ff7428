"""Compression step: find a solution of size <= k disjoint from a known solution Z.

Pipeline of :func:`solve_compression`:

1. untangle, so that every arc with both ends outside Z carries the identity;
2. repeatedly delete vertices forced by the flow-graph rule;
3. give up when two vertices of Z are joined by too many distinct
   external-path values;
4. enumerate the remaining candidate labelings of Z and, for each, solve the
   Multiway Cut instance that encodes "consistent labeling extending it".
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice

from .errors import PreconditionError, UsageError
from .graph import LabeledGraph, NonNullWitness, find_consistent_labeling
from .groups import GroupElement, contains, dedup
from .multiway_cut import MwcInstance, _reach, min_vertex_cut, solve_mwc


@dataclass
class CompressionInstance:
    graph: LabeledGraph
    k: int
    Z: list

    def __post_init__(self):
        self.Z = sorted(set(self.Z))
        missing = [z for z in self.Z if z not in self.graph]
        if missing:
            raise UsageError(f"Z contains unknown vertices {missing}")

    @property
    def outside(self) -> list:
        zset = set(self.Z)
        return [v for v in self.graph.vertices if v not in zset]


@dataclass
class FlowGraph:
    """Undirected graph on ``V \\ Z`` plus one vertex per distinct label out of ``z``.

    Label vertex ``i`` (carrying ``labels[i]``) has id ``-1 - i``.
    """

    adj: dict
    labels: list

    @staticmethod
    def label_vertex(i: int) -> int:
        return -1 - i

    @property
    def label_vertices(self) -> list:
        return [self.label_vertex(i) for i in range(len(self.labels))]


def threshold(k: int) -> int:
    """Number of distinct external-path values between two vertices of Z that rules out a solution."""
    return k**3 * (k + 1) ** 2 + 2


# -- untangling ---------------------------------------------------------------


def untangle_around(graph: LabeledGraph, x: int, g: GroupElement) -> LabeledGraph:
    """Premultiply arcs leaving ``x`` by ``g``; postmultiply arcs entering ``x`` by ``g^-1``."""
    group = graph.group
    g_inv = group.inv(g)
    out = graph.copy()
    for v, label in graph.out_arcs(x):
        out._out[x][v] = group.mul(g, label)
        out._out[v][x] = group.mul(graph.label(v, x), g_inv)
    return out


def untangle_all(graph: LabeledGraph, shifts: dict) -> LabeledGraph:
    """Untangle around every vertex of ``shifts`` at once.

    Untanglings around different vertices commute, so the arc ``(u, v)``
    ends up labeled ``shifts[u] * label * shifts[v]^-1`` (missing entries act
    as the identity).
    """
    group = graph.group
    inverse = {v: group.inv(g) for v, g in shifts.items()}
    out = LabeledGraph(group)
    for u in graph.vertices:
        out.add_vertex(u)
        arcs = out._out[u]
        for v, label in graph.out_arcs(u):
            if u in shifts:
                label = group.mul(shifts[u], label)
            if v in inverse:
                label = group.mul(label, inverse[v])
            arcs[v] = label
    return out


def untangle_instance(inst: CompressionInstance) -> CompressionInstance:
    outside = inst.graph.delete_vertices(inst.Z)
    labeling = find_consistent_labeling(outside)
    if isinstance(labeling, NonNullWitness):
        raise PreconditionError(
            "G - Z contains a non-null cycle " + " ".join(map(str, labeling.cycle)),
            witness=labeling,
        )
    return CompressionInstance(untangle_all(inst.graph, labeling), inst.k, inst.Z)


def is_untangled(inst: CompressionInstance) -> bool:
    zset = set(inst.Z)
    group = inst.graph.group
    return all(
        group.is_identity(g)
        for u, v, g in inst.graph.arcs()
        if u not in zset and v not in zset
    )


# -- flow graph and the forcing rule ------------------------------------------


def build_flow_graph(inst: CompressionInstance, z: int) -> FlowGraph:
    graph = inst.graph
    group = graph.group
    zset = set(inst.Z)
    adj = {v: {u for u in graph.neighbors(v) if u not in zset} for v in inst.outside}
    boundary = [(v, g) for v, g in graph.out_arcs(z) if v not in zset]
    labels = dedup(group, (g for _, g in boundary))
    for i, label in enumerate(labels):
        adj[FlowGraph.label_vertex(i)] = set()
    for v, g in boundary:
        i = next(i for i, label in enumerate(labels) if group.eq(label, g))
        adj[FlowGraph.label_vertex(i)].add(v)
        adj[v].add(FlowGraph.label_vertex(i))
    return FlowGraph(adj, labels)


def disjoint_paths_to_labels(flow: FlowGraph, v: int, cap: int) -> int:
    """Paths from ``v`` to label vertices sharing only ``v``, counted up to ``cap + 1``."""
    sink = object()
    adj = dict(flow.adj)
    adj[sink] = set(flow.label_vertices)
    for t in flow.label_vertices:
        adj[t] = adj[t] | {sink}
    return min_vertex_cut(adj, {v}, {sink}, cap)


def reduction_rule_scan(inst: CompressionInstance):
    """A vertex outside Z with >= k+2 such paths in some flow graph, or ``None``."""
    need = inst.k + 2
    for z in inst.Z:
        flow = build_flow_graph(inst, z)
        if len(flow.labels) < need:
            continue
        for v in inst.outside:
            if len(flow.adj[v]) < need:
                continue
            if disjoint_paths_to_labels(flow, v, need - 1) >= need:
                return v
    return None


# -- external path values -----------------------------------------------------


def _outside_components(inst: CompressionInstance) -> dict:
    zset = set(inst.Z)
    graph = inst.graph
    comp = {}
    for v in inst.outside:
        if v in comp:
            continue
        for u in _reach(graph._out, [v], zset):
            comp[u] = v
    return comp


def compute_sigma_pair(inst: CompressionInstance, z1: int, z2: int, limit=None, comp=None) -> list:
    """Distinct values of external paths from ``z1`` to ``z2``.

    Inside an untangled instance only the first and last arc of such a path
    can be non-identity, so a value is realised iff the two boundary arcs
    land in one component of ``G - Z``; a direct arc is a path with no
    interior.  Collection stops at ``limit`` values (default: the no-instance
    threshold).
    """
    if z1 == z2:
        raise UsageError("external path endpoints must differ")
    if limit is None:
        limit = threshold(inst.k)
    if comp is None:
        comp = _outside_components(inst)
    graph = inst.graph
    group = graph.group
    first, last = {}, {}
    for u, g in graph.out_arcs(z1):
        if u in comp:
            first.setdefault(comp[u], []).append(g)
    for v, g in graph.out_arcs(z2):
        if v in comp:
            last.setdefault(comp[v], []).append(graph.label(v, z2))

    def values():
        if graph.has_arc(z1, z2):
            yield graph.label(z1, z2)
        for c in sorted(first):
            if c not in last:
                continue
            heads = dedup(group, first[c])
            tails = dedup(group, last[c])
            for a in heads:
                for b in tails:
                    yield group.mul(a, b)

    return dedup(group, values(), limit)


def sigma_table(inst: CompressionInstance, limit=None) -> dict:
    """``{(z1, z2): values}`` for every ordered pair of distinct vertices of Z."""
    comp = _outside_components(inst)
    group = inst.graph.group
    table = {}
    for i, z1 in enumerate(inst.Z):
        for z2 in inst.Z[i + 1 :]:
            forward = compute_sigma_pair(inst, z1, z2, limit, comp)
            table[z1, z2] = forward
            table[z2, z1] = [group.inv(g) for g in forward]
    return table


def no_instance_check(inst: CompressionInstance, table=None) -> bool:
    """True when some pair of Z reaches the threshold of distinct external-path values."""
    if table is None:
        table = sigma_table(inst)
    need = threshold(inst.k)
    return any(len(values) >= need for values in table.values())


# -- labelings of Z -----------------------------------------------------------


def enumerate_boundary_labelings(inst: CompressionInstance, table=None):
    """Yield candidate labelings of Z as ``{z: element}`` dicts.

    The candidates are exactly the labelings obtained from some forest on Z
    whose trees are rooted at their smallest vertex with the identity and
    whose edges ``z1 z2`` satisfy ``phi(z2) = phi(z1) * g`` for a value ``g``
    of an external path from ``z1`` to ``z2``.  Each labeling is produced
    once: the search builds only the canonical forest of a labeling, namely
    the one found by BFS from the smallest unvisited identity-labeled vertex
    through edges whose relation holds, restricted to vertices above the root.
    A neighbour not taken as a child records a constraint that its eventual
    value must not satisfy the relation.
    """
    group = inst.graph.group
    Z = inst.Z
    if table is None:
        table = sigma_table(inst)
    phi: dict = {}
    rejected = {z: [] for z in Z}

    def allowed(w, value):
        for y in rejected[w]:
            if contains(group, table[y, w], group.mul(group.inv(phi[y]), value)):
                return False
        return True

    def search(queue, root, head, pending):
        if pending:
            w, rest = pending[0], pending[1:]
            for g in table[head, w]:
                value = group.mul(phi[head], g)
                if allowed(w, value):
                    phi[w] = value
                    yield from search(queue + (w,), root, head, rest)
                    del phi[w]
            rejected[w].append(head)
            yield from search(queue, root, head, rest)
            rejected[w].pop()
            return
        if queue:
            head, queue = queue[0], queue[1:]
            pending = tuple(
                w for w in Z if w > root and w not in phi and table.get((head, w))
            )
            yield from search(queue, root, head, pending)
            return
        root = next((r for r in Z if r not in phi), None)
        if root is None:
            yield {z: phi[z] for z in Z}
            return
        one = group.identity()
        if allowed(root, one):
            phi[root] = one
            yield from search((root,), root, None, ())
            del phi[root]

    yield from search((), None, None, ())


# -- fixed labeling -----------------------------------------------------------


def _fixed_labeling_mwc(inst: CompressionInstance, phi: dict):
    """The Multiway Cut instance for ``phi`` plus its terminal values, or ``None`` if ``phi`` clashes inside Z."""
    graph = inst.graph
    group = graph.group
    zset = set(inst.Z)
    for z1 in inst.Z:
        for z2, g in graph.out_arcs(z1):
            if z2 in zset and not group.eq(phi[z2], group.mul(phi[z1], g)):
                return None
    adj = {v: {u for u in graph.neighbors(v) if u not in zset} for v in inst.outside}
    values: list = []
    for z in inst.Z:
        for v, g in graph.out_arcs(z):
            if v in zset:
                continue
            value = group.mul(phi[z], g)
            for i, known in enumerate(values):
                if group.eq(known, value):
                    break
            else:
                i = len(values)
                values.append(value)
                adj[-1 - i] = set()
            adj[-1 - i].add(v)
            adj[v].add(-1 - i)
    terminals = [-1 - i for i in range(len(values))]
    return MwcInstance(adj, terminals, inst.k), values


def solve_fixed_labeling(inst: CompressionInstance, phi: dict):
    """A set X outside Z, |X| <= k, such that some consistent labeling of G - X extends ``phi``."""
    built = _fixed_labeling_mwc(inst, phi)
    if built is None:
        return None
    mwc, _ = built
    return solve_mwc(mwc)


def extend_labeling(inst: CompressionInstance, phi: dict, removed) -> dict:
    """Consistent labeling of ``G - removed`` agreeing with ``phi`` on Z.

    A vertex takes the value of the terminal it is connected to in the
    Multiway Cut graph, or the identity if it reaches none.
    """
    built = _fixed_labeling_mwc(inst, phi)
    if built is None:
        raise UsageError("labeling of Z is inconsistent on arcs inside Z")
    mwc, values = built
    removed = set(removed)
    labels = dict(phi)
    for i, value in enumerate(values):
        for v in _reach(mwc.adj, [-1 - i], removed):
            if v >= 0:
                labels[v] = value
    one = inst.graph.group.identity()
    for v in inst.outside:
        if v not in removed:
            labels.setdefault(v, one)
    return labels


# -- driver -------------------------------------------------------------------


def solve_compression(inst: CompressionInstance, threads: int = 0):
    """Solution of size <= k disjoint from Z, or ``None`` for NO.

    With ``threads > 0`` candidate labelings are checked concurrently in
    batches; the answer is still the one for the earliest labeling in the
    sequential order.
    """
    if inst.k < 0:
        return None
    inst = untangle_instance(inst)
    if not isinstance(find_consistent_labeling(inst.graph), NonNullWitness):
        return set()
    forced = []
    while True:
        v = reduction_rule_scan(inst)
        if v is None:
            break
        forced.append(v)
        if inst.k == 0:
            return None
        # deleting a vertex keeps the instance untangled
        inst = CompressionInstance(inst.graph.delete_vertices([v]), inst.k - 1, inst.Z)
    table = sigma_table(inst)
    if no_instance_check(inst, table):
        return None
    labelings = enumerate_boundary_labelings(inst, table)
    if threads > 0:
        found = _first_parallel(inst, labelings, threads)
    else:
        found = next(
            (X for X in map(lambda phi: solve_fixed_labeling(inst, phi), labelings) if X is not None),
            None,
        )
    if found is None:
        return None
    return set(forced) | set(found)


def _first_parallel(inst, labelings, threads):
    batch = 4 * threads
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            chunk = list(islice(labelings, batch))
            if not chunk:
                return None
            for X in pool.map(lambda phi: solve_fixed_labeling(inst, phi), chunk):
                if X is not None:
                    return X
