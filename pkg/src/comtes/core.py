"""Self-indexed graphs and comtes: data model, validation, canonical forms.

A self-indexed graph is a finite directed multigraph whose arrows carry a
third incidence, the *label*, which is again a vertex.  A comte is a
self-indexed graph together with an integer flow on each arrow that is
conserved at every vertex (outgoing flow sum equals incoming flow sum; a
loop contributes the same amount to both sides).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations, product


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    label: str


@dataclass(frozen=True)
class SelfIndexedGraph:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class Comte:
    graph: SelfIndexedGraph
    flows: tuple[int, ...]

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.graph.arrows


def graph(vertices, arrows=()) -> SelfIndexedGraph:
    """Build a graph from vertex names and (source, target, label) triples.

    ``vertices`` may be an iterable of names or a whitespace-separated string.
    """
    if isinstance(vertices, str):
        vertices = vertices.split()
    return SelfIndexedGraph(tuple(vertices), tuple(Arrow(s, t, l) for s, t, l in arrows))


def comte(vertices, arrows=()) -> Comte:
    """Build a comte from vertex names and (source, target, label, flow) tuples."""
    if isinstance(vertices, str):
        vertices = vertices.split()
    arrs = tuple(Arrow(s, t, l) for s, t, l, _ in arrows)
    flows = tuple(int(f) for _, _, _, f in arrows)
    return Comte(SelfIndexedGraph(tuple(vertices), arrs), flows)


def as_comte(obj: Comte | SelfIndexedGraph) -> Comte:
    """View a bare graph as a comte with zero flows; comtes pass through."""
    if isinstance(obj, Comte):
        return obj
    return Comte(obj, (0,) * len(obj.arrows))


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class ValidationReport:
    dangling: tuple[tuple[int, str, str], ...]      # (arrow index, field, offending name)
    conservation: tuple[tuple[str, int, int], ...]  # (vertex, outgoing sum, incoming sum)
    flow_count_ok: bool = True

    @property
    def ok(self) -> bool:
        return not self.dangling and not self.conservation and self.flow_count_ok

    def describe(self) -> str:
        if self.ok:
            return "valid"
        lines = []
        if not self.flow_count_ok:
            lines.append("flow list length does not match arrow count")
        for i, fld, name in self.dangling:
            lines.append(f"arrow {i}: {fld} {name!r} is not a vertex")
        for v, out, inc in self.conservation:
            lines.append(f"vertex {v!r}: outgoing {out} != incoming {inc}")
        return "\n".join(lines)


def validate_graph(g: SelfIndexedGraph) -> ValidationReport:
    """Report dangling arrow references (structure only, no flows)."""
    vs = set(g.vertices)
    dangling = []
    for i, a in enumerate(g.arrows):
        for fld in ("source", "target", "label"):
            name = getattr(a, fld)
            if name not in vs:
                dangling.append((i, fld, name))
    return ValidationReport(tuple(dangling), ())


def validate(c: Comte) -> ValidationReport:
    """Report every dangling arrow reference and every conservation violation.

    An empty report means the comte is valid.  A loop adds its flow to both
    sides of the balance at its vertex, so it never violates conservation.
    """
    base = validate_graph(c.graph)
    flow_count_ok = len(c.flows) == len(c.graph.arrows)
    bad = []
    if flow_count_ok:
        out: dict[str, int] = {v: 0 for v in c.graph.vertices}
        inc: dict[str, int] = {v: 0 for v in c.graph.vertices}
        for a, f in zip(c.graph.arrows, c.flows):
            if a.source in out:
                out[a.source] += f
            if a.target in inc:
                inc[a.target] += f
        for v in c.graph.vertices:
            if out[v] != inc[v]:
                bad.append((v, out[v], inc[v]))
    return ValidationReport(base.dangling, tuple(bad), flow_count_ok)


# ---------------------------------------------------------------------------
# Classification and components

GENERAL = "general"
R_GRAPH = "r"
Q_GRAPH = "q"


def classify(g: SelfIndexedGraph) -> str:
    """Classify as ``general``, ``r`` or ``q``.

    In an r-graph no two distinct arrows share (source, label) and no two
    share (target, label).  A q-graph additionally carries, at every vertex
    a, a loop a -> a labeled a.
    """
    by_sl = set()
    by_tl = set()
    for a in g.arrows:
        if (a.source, a.label) in by_sl or (a.target, a.label) in by_tl:
            return GENERAL
        by_sl.add((a.source, a.label))
        by_tl.add((a.target, a.label))
    for v in g.vertices:
        if not any(a.source == v and a.target == v and a.label == v for a in g.arrows):
            return R_GRAPH
    return Q_GRAPH


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def components(g: SelfIndexedGraph) -> tuple[tuple[str, ...], ...]:
    """Partition of the vertices generated by source ~ target per arrow.

    Labels do not merge classes.  Components are ordered by the position of
    their earliest vertex in the graph's vertex order; each class lists its
    members in vertex order.
    """
    uf = _UnionFind(g.vertices)
    for a in g.arrows:
        uf.union(a.source, a.target)
    idx = g.vertex_index()
    classes: dict[str, list[str]] = {}
    for v in g.vertices:
        classes.setdefault(uf.find(v), []).append(v)
    comps = sorted(classes.values(), key=lambda c: idx[c[0]])
    return tuple(tuple(c) for c in comps)


def component_index(g: SelfIndexedGraph) -> dict[str, int]:
    """Map each vertex to the index of its component in ``components(g)``."""
    out = {}
    for i, comp in enumerate(components(g)):
        for v in comp:
            out[v] = i
    return out


# ---------------------------------------------------------------------------
# Quotients and contraction


def quotient(g: SelfIndexedGraph, pairs) -> tuple[SelfIndexedGraph, dict[str, str]]:
    """Identify vertices pairwise (transитively); return graph and vertex map.

    The representative of each class is its earliest member in vertex order.
    Arrow order is preserved; labels are rewritten through the map.
    """
    uf = _UnionFind(g.vertices)
    for x, y in pairs:
        uf.union(x, y)
    idx = g.vertex_index()
    rep: dict[str, str] = {}
    members: dict[str, list[str]] = {}
    for v in g.vertices:
        members.setdefault(uf.find(v), []).append(v)
    vmap = {}
    for group in members.values():
        r = min(group, key=lambda v: idx[v])
        for v in group:
            vmap[v] = r
    new_vertices = tuple(v for v in g.vertices if vmap[v] == v)
    new_arrows = tuple(Arrow(vmap[a.source], vmap[a.target], vmap[a.label]) for a in g.arrows)
    return SelfIndexedGraph(new_vertices, new_arrows), vmap


def contract(g: SelfIndexedGraph, T) -> SelfIndexedGraph:
    """Contract the arrows with indices in ``T``: identify each one's source
    and target and delete the arrow.  Contracting a loop deletes it without
    merging anything.  The result does not depend on the contraction order.
    """
    return contract_with_map(g, T)[0]


def contract_with_map(g: SelfIndexedGraph, T) -> tuple[SelfIndexedGraph, dict[str, str]]:
    T = set(T)
    for i in T:
        if not 0 <= i < len(g.arrows):
            raise IndexError(f"arrow index {i} out of range")
    q, vmap = quotient(g, [(g.arrows[i].source, g.arrows[i].target) for i in T])
    kept = tuple(a for i, a in enumerate(q.arrows) if i not in T)
    return SelfIndexedGraph(q.vertices, kept), vmap


# ---------------------------------------------------------------------------
# Canonical forms
#
# The canonical form of a graph (or comte) minimizes, over vertex bijections
# onto 0..n-1, the sorted list of arrow tuples (source, target, label[, flow]).
# Bijections are restined to respect an isomorphism-invariant color
# partition obtained by iterated refinement, which keeps the brute-force
# part tiny for the graph sizes this library targets.


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    vertex_map: dict[str, str] = field(compare=False)
    arrow_perm: tuple[int, ...] = field(compare=False)  # old index -> new index
    graph: SelfIndexedGraph = field(compare=False)
    flows: tuple[int, ...] | None = field(compare=False, default=None)

    @property
    def comte(self) -> Comte:
        if self.flows is None:
            raise ValueError("canonical form was computed without flows")
        return Comte(self.graph, self.flows)


def _refine_colors(n, arrs):
    """Iterated color refinement; returns a list of color ids per vertex."""
    colors = [0] * n
    ncolors = 1
    while True:
        sigs = []
        for v in range(n):
            local = []
            for s, t, l, f in arrs:
                role = (s == v) * 4 + (t == v) * 2 + (l == v)
                if role:
                    local.append((role, colors[s], colors[t], colors[l], f))
            local.sort()
            sigs.append((colors[v], tuple(local)))
        order = sorted(set(sigs))
        rank = {sig: i for i, sig in enumerate(order)}
        new = [rank[sigs[v]] for v in range(n)]
        if len(order) == ncolors:
            return new
        colors, ncolors = new, len(order)


def _candidate_positions(colors):
    """Assignments vertex -> position consistent with the color classes.

    Classes are laid out in increasing color order; all orderings inside a
    class are enumerated.
    """
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    blocks = [classes[c] for c in sorted(classes)]
    starts = []
    pos = 0
    for b in blocks:
        starts.append(pos)
        pos += len(b)
    for perms in product(*[permutations(b) for b in blocks]):
        assign = [0] * len(colors)
        for start, perm in zip(starts, perms):
            for off, v in enumerate(perm):
                assign[v] = start + off
        yield assign


def canonical_form(obj: Comte | SelfIndexedGraph, *, with_flows: bool | None = None) -> CanonicalForm:
    """Canonical form of a graph or comte, exact under isomorphism.

    For comtes, isomorphisms preserve flows unless ``with_flows=False`` is
    passed, which canonicalizes the underlying graph alone.
    """
    if isinstance(obj, Comte):
        g = obj.graph
        flows = obj.flows if (with_flows is None or with_flows) else None
    else:
        g = obj
        flows = None
        if with_flows:
            raise ValueError("bare graphs carry no flows")
    n = len(g.vertices)
    idx = g.vertex_index()
    arrs = [
        (idx[a.source], idx[a.target], idx[a.label], flows[i] if flows is not None else 0)
        for i, a in enumerate(g.arrows)
    ]
    if n <= 4:
        colors = [0] * n
    else:
        colors = _refine_colors(n, arrs)
    best = None
    best_assign = None
    for assign in _candidate_positions(colors):
        enc = sorted(
            ((assign[s], assign[t], assign[l], f), i) for i, (s, t, l, f) in enumerate(arrs)
        )
        enc_key = tuple(e for e, _ in enc)
        if best is None or enc_key < best:
            best = enc_key
            best_assign = (assign, tuple(i for _, i in enc))
    assign, order = best_assign if best_assign is not None else ([], ())
    names = tuple(str(i) for i in range(n))
    vmap = {v: names[assign[idx[v]]] for v in g.vertices}
    new_arrows = tuple(Arrow(names[e[0]], names[e[1]], names[e[2]]) for e in (best or ()))
    new_graph = SelfIndexedGraph(names, new_arrows)
    arrow_perm = [0] * len(order)
    for new_i, old_i in enumerate(order):
        arrow_perm[old_i] = new_i
    new_flows = tuple(e[3] for e in (best or ())) if flows is not None else None
    tag = b"c" if flows is not None else b"g"
    key = tag + repr((n, best or ())).encode()
    return CanonicalForm(key, vmap, tuple(arrow_perm), new_graph, new_flows)


def canonical_key(obj: Comte | SelfIndexedGraph, *, with_flows: bool | None = None) -> bytes:
    """Deterministic byte key, equal for two objects iff they are isomorphic."""
    return canonical_form(obj, with_flows=with_flows).key


# ---------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True)
class GraphHomomorphism:
    vertex_map: tuple[tuple[str, str], ...]  # sorted (vertex, image) pairs
    arrow_map: tuple[int, ...]               # arrow index -> arrow index

    def vertex_dict(self) -> dict[str, str]:
        return dict(self.vertex_map)


def is_homomorphism(h: GraphHomomorphism, src: SelfIndexedGraph, dst: SelfIndexedGraph) -> bool:
    """Check that ``h`` commutes with source, target and label maps."""
    vm = h.vertex_dict()
    if set(vm) != set(src.vertices):
        return False
    if any(img not in set(dst.vertices) for img in vm.values()):
        return False
    if len(h.arrow_map) != len(src.arrows):
        return False
    for a, j in zip(src.arrows, h.arrow_map):
        if not 0 <= j < len(dst.arrows):
            return False
        b = dst.arrows[j]
        if vm[a.source] != b.source or vm[a.target] != b.target or vm[a.label] != b.label:
            return False
    return True


# ---------------------------------------------------------------------------
# Text documents (JSON shaped)


class DecodeError(ValueError):
    """Raised when a comte document is malformed; the message locates the
    first violation."""


def encode(obj: Comte | SelfIndexedGraph) -> str:
    """Serialize to the canonical document form (fixed field order)."""
    if isinstance(obj, Comte):
        arrows = [
            {"source": a.source, "target": a.target, "label": a.label, "flow": f}
            for a, f in zip(obj.graph.arrows, obj.flows)
        ]
        vertices = list(obj.graph.vertices)
    else:
        arrows = [{"source": a.source, "target": a.target, "label": a.label} for a in obj.arrows]
        vertices = list(obj.vertices)
    return json.dumps({"vertices": vertices, "arrows": arrows}, indent=2) + "\n"


def decode(text: str) -> Comte | SelfIndexedGraph:
    """Parse a document; returns a Comte when every arrow carries a flow
    (including the zero-arrow case) and a bare graph when none does.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DecodeError(f"line {e.lineno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise DecodeError("top level must be an object")
    if "vertices" not in doc:
        raise DecodeError("missing field 'vertices'")
    if "arrows" not in doc:
        raise DecodeError("missing field 'arrows'")
    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise DecodeError("'vertices' must be a list of strings")
    if len(set(verts)) != len(verts):
        raise DecodeError("'vertices' contains a duplicate")
    vset = set(verts)
    if not isinstance(doc["arrows"], list):
        raise DecodeError("'arrows' must be a list")
    arrows = []
    flows = []
    has_flow = None
    for i, rec in enumerate(doc["arrows"]):
        if not isinstance(rec, dict):
            raise DecodeError(f"arrows[{i}]: must be an object")
        for fld in ("source", "target", "label"):
            if fld not in rec:
                raise DecodeError(f"arrows[{i}]: missing field '{fld}'")
            if not isinstance(rec[fld], str) or rec[fld] not in vset:
                raise DecodeError(f"arrows[{i}].{fld}: unknown vertex {rec[fld]!r}")
        this_has = "flow" in rec
        if has_flow is None:
            has_flow = this_has
        elif has_flow != this_has:
            raise DecodeError(f"arrows[{i}]: flow present on some arrows but not all")
        if this_has:
            f = rec["flow"]
            if isinstance(f, bool) or not isinstance(f, int):
                raise DecodeError(f"arrows[{i}].flow: not an integer: {f!r}")
            flows.append(f)
        arrows.append(Arrow(rec["source"], rec["target"], rec["label"]))
    g = SelfIndexedGraph(tuple(verts), tuple(arrows))
    if has_flow is False:
        return g
    return Comte(g, tuple(flows))
