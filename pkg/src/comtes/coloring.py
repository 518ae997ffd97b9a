"""Colorings, graph homomorphisms, and the cocycle state sums.

A coloring of a self-indexed graph by a quandle X sends vertices to
elements so that C(label) |> C(source) = C(target) at every arrow; it is
the same thing as a graph homomorphism into the self-indexed graph of X.
The state sums below weight colorings (or general homomorphisms) by
cocycle values and flows (or chain coefficients) in the group ring Z[A].
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Comte, GraphHomomorphism, SelfIndexedGraph
from .racks import AbelianGroup, Cocycle2, FiniteRack, graph_of_rack, rack_arrow_index, ring_add


def _vertex_maps(src: SelfIndexedGraph, dst: SelfIndexedGraph):
    """All vertex maps f with: every src arrow has at least one dst arrow
    над (f(source), f(label), f(target)).  Backtracks most-constrained
    vertices first; yields dicts in no particular order."""
    sv = list(src.vertices)
    if not sv:
        yield {}
        return
    dst_by_sl: dict[tuple[str, str], list[int]] = {}
    dst_by_slt: dict[tuple[str, str, str], list[int]] = {}
    for j, b in enumerate(dst.arrows):
        dst_by_sl.setdefault((b.source, b.label), []).append(j)
        dst_by_slt.setdefault((b.source, b.label, b.target), []).append(j)
    touch = {v: 0 for v in sv}
    for a in src.arrows:
        for v in (a.source, a.target, a.label):
            touch[v] += 1
    order = sorted(sv, key=lambda v: (-touch[v], sv.index(v)))
    pos = {v: i for i, v in enumerate(order)}
    arrows_ready = [[] for _ in sv]
    for a in src.arrows:
        stage = max(pos[a.source], pos[a.target], pos[a.label])
        arrows_ready[stage].append(a)
    assignment: dict[str, str] = {}

    def rec(i):
        if i == len(order):
            yield dict(assignment)
            return
        v = order[i]
        for w in dst.vertices:
            assignment[v] = w
            ok = True
            for a in arrows_ready[i]:
                s, l, t = assignment[a.source], assignment[a.label], assignment[a.target]
                if not dst_by_slt.get((s, l, t)):
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
        assignment.pop(v, None)

    yield from rec(0)


def graph_homomorphisms(src: SelfIndexedGraph, dst: SelfIndexedGraph) -> list[GraphHomomorphism]:
    """All homomorphisms src -> dst, ordered by their vertex images (in
    src vertex order) and then arrow images."""
    dst_by_slt: dict[tuple[str, str, str], list[int]] = {}
    for j, b in enumerate(dst.arrows):
        dst_by_slt.setdefault((b.source, b.label, b.target), []).append(j)
    out = []
    for vm in _vertex_maps(src, dst):
        choices = []
        for a in src.arrows:
            cands = dst_by_slt.get((vm[a.source], vm[a.label], vm[a.target]), [])
            if not cands:
                break
            choices.append(cands)
        else:
            def expand(i, acc):
                if i == len(choices):
                    out.append(
                        GraphHomomorphism(
                            tuple(sorted(vm.items())), tuple(acc)
                        )
                    )
                    return
                for j in choices[i]:
                    expand(i + 1, acc + [j])

            expand(0, [])
    out.sort(key=lambda h: (tuple(dict(h.vertex_map)[v] for v in src.vertices), h.arrow_map))
    return out


def colorings(g: SelfIndexedGraph, x: FiniteRack) -> list[dict[str, int]]:
    """All colorings of g by the rack x, as vertex -> element maps, sorted
    by the tuple of element values in vertex order."""
    target = graph_of_rack(x)
    out = []
    for vm in _vertex_maps(g, target):
        # in a rack graph the arrow images are determined by the vertices,
        # so every surviving vertex map is a coloring
        out.append({v: int(w) for v, w in vm.items()})
    out.sort(key=lambda c: tuple(c[v] for v in g.vertices))
    return out


def coloring_count(g: SelfIndexedGraph, x: FiniteRack) -> int:
    return len(colorings(g, x))


def phi_invariant(c: Comte, x: FiniteRack, f: Cocycle2) -> dict:
    """The cocycle state sum over colorings, in the group ring Z[A]:
    each coloring C contributes the product over arrows b --a,I--> c of
    f(C(a), C(b))^I.  Requires a quandle and a 2-cocycle on it; the
    augmentation of the result is the number of colorings.
    """
    if not x.quandle:
        raise ValueError("phi_invariant requires a quandle")
    if f.n != x.n:
        raise ValueError("cocycle size does not match the quandle")
    group = f.group
    result: dict = {}
    for col in colorings(c.graph, x):
        total = group.identity
        for a, flow in zip(c.graph.arrows, c.flows):
            total = group.add(total, group.scale(f.value(col[a.label], col[a.source]), flow))
        result = ring_add(result, {total: 1})
    return result


# ---------------------------------------------------------------------------
# Chains, cochains and the general state sum
#
# A degree-n chain on G assigns integers to homomorphisms Y_n -> G; a
# degree-n cochain on G assigns A-elements to them.  Homs are keyed by
# their signature: the tuple of vertex images (in Y_n vertex order)
# followed by the tuple of arrow images.

Signature = tuple[tuple[str, ...], tuple[int, ...]]


@dataclass(frozen=True)
class Chain:
    degree: int
    coeffs: tuple[tuple[Signature, int], ...]

    @staticmethod
    def from_dict(degree: int, d: dict) -> "Chain":
        return Chain(degree, tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)


@dataclass(frozen=True)
class Cochain:
    degree: int
    values: dict  # Signature -> A element; missing keys read as identity


def compose_signature(sig: Signature, hom: GraphHomomorphism) -> Signature:
    vm = dict(hom.vertex_map)
    vs, ars = sig
    return (tuple(vm[v] for v in vs), tuple(hom.arrow_map[j] for j in ars))


def state_sum(
    gsrc: SelfIndexedGraph,
    chain: Chain,
    gtgt: SelfIndexedGraph,
    cochain: Cochain,
    group: AbelianGroup,
) -> dict:
    """Sum over homomorphisms sigma: gsrc -> gtgt of the integral of the
    chain against the pulled-back cochain, as an element of Z[A].

    For a degree-2 chain coming from a comte's flow, a quandle-graph target
    and a quandle 2-cocycle, this equals ``phi_invariant``.
    """
    if chain.degree != cochain.degree:
        raise ValueError(
            f"degree mismatch: chain has degree {chain.degree}, cochain {cochain.degree}"
        )
    result: dict = {}
    for sigma in graph_homomorphisms(gsrc, gtgt):
        total = group.identity
        for sig, coeff in chain.coeffs:
            val = cochain.values.get(compose_signature(sig, sigma))
            if val is not None:
                total = group.add(total, group.scale(val, coeff))
        result = ring_add(result, {total: 1})
    return result


def cochain_from_cocycle2(x: FiniteRack, f: Cocycle2, degree2_signature) -> Cochain:
    """Reshape a quandle 2-cocycle into a degree-2 cochain on the graph of
    the quandle.  ``degree2_signature(g, e)`` must produce the signature of
    the basis homomorphism attached to arrow e (see homology module)."""
    g = graph_of_rack(x)
    values = {}
    for a in range(x.n):
        for b in range(x.n):
            e = rack_arrow_index(x, a, b)
            values[degree2_signature(g, e)] = f.value(a, b)
    return Cochain(2, values)
