"""Line-oriented instance files.

::

    # comment
    group cyclic 3          # or: z2pow m | symmetric n | free [n]; omit for plain graphs
    vertices 5
    param 2
    edge 0 1 2              # both arcs; label of 0 -> 1 (no label in plain graphs)
    arc 1 2 1               # one arc; the reverse is added with the inverse label
    terminal 4
    special 0 1
    forbidden 3

Element encodings: cyclic -> residue, z2pow -> bitstring, symmetric ->
space-separated images, free -> tokens ``gN`` / ``gN^`` or ``e``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .encoders import EsfvsInstance, apply_forbidden_gadget
from .errors import UsageError
from .graph import GfvsInstance, LabeledGraph
from .groups import Group, make_group
from .multiway_cut import MwcInstance


@dataclass
class InstanceFile:
    n: int
    group: Group | None = None
    k: int | None = None
    graph: LabeledGraph | None = None
    edges: list = field(default_factory=list)
    terminals: list = field(default_factory=list)
    special: list = field(default_factory=list)
    forbidden: list = field(default_factory=list)

    def plain_edges(self) -> list:
        if self.graph is not None:
            return [(u, v) for u, v, _ in self.graph.edges()]
        return list(self.edges)

    def budget(self) -> int:
        if self.k is None:
            raise UsageError("instance has no 'param' record")
        return self.k

    def to_gfvs(self) -> GfvsInstance:
        if self.graph is None:
            raise UsageError("not a group-labeled instance (missing 'group' record)")
        inst = GfvsInstance(self.graph, self.budget())
        if self.forbidden:
            inst = apply_forbidden_gadget(inst, self.forbidden)
        return inst

    def to_mwc(self) -> MwcInstance:
        return MwcInstance.from_edges(self.n, self.plain_edges(), self.terminals, self.budget())

    def to_esfvs(self) -> EsfvsInstance:
        return EsfvsInstance(self.n, self.plain_edges(), list(self.special), self.budget())


def _vertex(tok, n, lineno):
    try:
        v = int(tok)
    except ValueError:
        raise UsageError(f"line {lineno}: bad vertex {tok!r}") from None
    if n is None:
        raise UsageError(f"line {lineno}: 'vertices' must come before vertex references")
    if not 0 <= v < n:
        raise UsageError(f"line {lineno}: vertex {v} out of range 0..{n - 1}")
    return v


def _int(tok, what, lineno):
    try:
        return int(tok)
    except ValueError:
        raise UsageError(f"line {lineno}: bad {what} {tok!r}") from None


def parse_instance(text: str) -> InstanceFile:
    group = None
    n = None
    k = None
    labeled = {}  # (u, v) -> (label, lineno, kind)
    plain = []
    terminals, special, forbidden = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *rest = line.split()
        if keyword == "group":
            if group is not None:
                raise UsageError(f"line {lineno}: duplicate 'group' record")
            if not rest:
                raise UsageError(f"line {lineno}: 'group' needs a kind")
            try:
                group = make_group(" ".join(rest))
            except UsageError as exc:
                raise UsageError(f"line {lineno}: {exc}") from None
        elif keyword == "vertices":
            if len(rest) != 1 or n is not None:
                raise UsageError(f"line {lineno}: expected a single 'vertices <n>' record")
            n = _int(rest[0], "vertex count", lineno)
            if n < 0:
                raise UsageError(f"line {lineno}: negative vertex count")
        elif keyword == "param":
            if len(rest) != 1 or k is not None:
                raise UsageError(f"line {lineno}: expected a single 'param <k>' record")
            k = _int(rest[0], "parameter", lineno)
            if k < 0:
                raise UsageError(f"line {lineno}: parameter must be >= 0")
        elif keyword in ("edge", "arc"):
            if len(rest) < 2:
                raise UsageError(f"line {lineno}: '{keyword}' needs two endpoints")
            u, v = _vertex(rest[0], n, lineno), _vertex(rest[1], n, lineno)
            if u == v:
                raise UsageError(f"line {lineno}: self-loop at vertex {u}")
            label_text = " ".join(rest[2:])
            if group is None:
                if label_text:
                    raise UsageError(f"line {lineno}: label given but no 'group' record")
                if keyword == "arc":
                    raise UsageError(f"line {lineno}: 'arc' needs a group-labeled instance")
                plain.append((u, v, lineno))
                continue
            if not label_text:
                raise UsageError(f"line {lineno}: missing label")
            try:
                g = group.parse(label_text)
            except UsageError as exc:
                raise UsageError(f"line {lineno}: {exc}") from None
            if (u, v) in labeled:
                raise UsageError(f"line {lineno}: duplicate arc ({u}, {v})")
            if keyword == "edge":
                if (v, u) in labeled:
                    raise UsageError(f"line {lineno}: duplicate arc ({v}, {u})")
                labeled[u, v] = (g, lineno, "edge")
                labeled[v, u] = (group.inv(g), lineno, "edge")
            else:
                back = labeled.get((v, u))
                if back is not None:
                    if back[2] == "edge":
                        raise UsageError(f"line {lineno}: duplicate arc ({u}, {v})")
                    if not group.eq(g, group.inv(back[0])):
                        raise UsageError(
                            f"line {lineno}: pairing conflict with line {back[1]}: "
                            f"labels of ({u}, {v}) and ({v}, {u}) are not inverse"
                        )
                labeled[u, v] = (g, lineno, "arc")
        elif keyword == "terminal":
            if len(rest) != 1:
                raise UsageError(f"line {lineno}: 'terminal' takes one vertex")
            terminals.append(_vertex(rest[0], n, lineno))
        elif keyword == "forbidden":
            if len(rest) != 1:
                raise UsageError(f"line {lineno}: 'forbidden' takes one vertex")
            forbidden.append(_vertex(rest[0], n, lineno))
        elif keyword == "special":
            if len(rest) != 2:
                raise UsageError(f"line {lineno}: 'special' takes two vertices")
            special.append((_vertex(rest[0], n, lineno), _vertex(rest[1], n, lineno)))
        else:
            raise UsageError(f"line {lineno}: unknown record {keyword!r}")
    if n is None:
        raise UsageError("missing 'vertices' record")
    inst = InstanceFile(n=n, group=group, k=k)
    if group is not None:
        graph = LabeledGraph.with_vertices(group, n)
        for (u, v), (g, _, _) in sorted(labeled.items(), key=lambda item: item[1][1]):
            if not graph.has_arc(u, v):
                graph.add_edge(u, v, g)
        inst.graph = graph
    else:
        seen = set()
        for u, v, lineno in plain:
            key = frozenset((u, v))
            if key in seen:
                raise UsageError(f"line {lineno}: duplicate edge ({u}, {v})")
            seen.add(key)
            inst.edges.append((u, v))
    inst.terminals = sorted(set(terminals))
    inst.forbidden = sorted(set(forbidden))
    edge_set = {frozenset(e) for e in inst.plain_edges()}
    for u, v in special:
        if frozenset((u, v)) not in edge_set:
            raise UsageError(f"special edge ({u}, {v}) is not an edge")
    inst.special = special
    return inst


def serialize_instance(inst: InstanceFile) -> str:
    lines = []
    if inst.group is not None:
        lines.append(f"group {inst.group.descriptor()}")
    lines.append(f"vertices {inst.n}")
    if inst.k is not None:
        lines.append(f"param {inst.k}")
    if inst.graph is not None:
        for u, v, g in inst.graph.edges():
            lines.append(f"edge {u} {v} {inst.group.format(g)}")
    else:
        for u, v in inst.edges:
            lines.append(f"edge {u} {v}")
    lines += [f"terminal {t}" for t in inst.terminals]
    lines += [f"special {u} {v}" for u, v in inst.special]
    lines += [f"forbidden {v}" for v in inst.forbidden]
    return "\n".join(lines) + "\n"


def gfvs_file(inst: GfvsInstance) -> InstanceFile:
    """Wrap a GFVS instance with dense vertex ids ``0..n-1`` for writing."""
    vertices = inst.graph.vertices
    if vertices != list(range(len(vertices))):
        raise UsageError("vertex ids must be 0..n-1 to be written to a file")
    return InstanceFile(n=len(vertices), group=inst.group, k=inst.k, graph=inst.graph)


def read_instance(path: str) -> InstanceFile:
    with open(path) as fh:
        return parse_instance(fh.read())
