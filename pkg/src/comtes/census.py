"""Enumeration of r-graphs and q-graphs up to isomorphism, with homology
signatures.

An r-graph structure on a fixed vertex set is the same thing as one
partial injection per label vertex (sending sources to targets); q-graphs
additionally fix the label vertex itself.  Enumeration walks all labeled
structures and deduplicates by canonical key.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .core import Arrow, SelfIndexedGraph, canonical_form, classify
from .homology import HomologyGroup, homology_range


def partial_injections(n: int) -> list[tuple[int, ...]]:
    """All partial injections on 0..n-1 as tuples with -1 for undefined."""
    out = []

    def rec(i, used, acc):
        if i == n:
            out.append(tuple(acc))
            return
        rec(i + 1, used, acc + [-1])
        for v in range(n):
            if v not in used:
                rec(i + 1, used | {v}, acc + [v])

    rec(0, frozenset(), [])
    return out


def graph_from_injections(maps) -> SelfIndexedGraph:
    """Build the r-graph with an arrow b --label--> maps[label][b] for every
    defined value.  Vertices are 0..n-1 as strings; arrows ordered by
    (label, source)."""
    n = len(maps)
    verts = tuple(str(i) for i in range(n))
    arrows = []
    for lab in range(n):
        for src in range(n):
            tgt = maps[lab][src]
            if tgt >= 0:
                arrows.append(Arrow(str(src), str(tgt), str(lab)))
    return SelfIndexedGraph(verts, tuple(arrows))


def _enumerate(n_vertices: int, q_only: bool, include_arrowless: bool) -> list[SelfIndexedGraph]:
    injections = partial_injections(n_vertices)
    reps: dict[bytes, SelfIndexedGraph] = {}

    def rec(label, acc):
        if label == n_vertices:
            g = graph_from_injections(acc)
            if not include_arrowless and not g.arrows:
                return
            cf = canonical_form(g)
            if cf.key not in reps:
                reps[cf.key] = cf.graph
            return
        for inj in injections:
            if q_only and inj[label] != label:
                continue
            rec(label + 1, acc + [inj])

    rec(0, [])
    return [reps[k] for k in sorted(reps)]


def enumerate_r_graphs(n_vertices: int, include_arrowless: bool = False) -> list[SelfIndexedGraph]:
    """Canonical representatives of the r-graphs on the given vertex count,
    sorted by canonical key.  Practical through n = 3 (the labeled space
    grows like A002720(n)^n: already 1.9e9 at n = 4).

    By default the single arrowless class is omitted: the classical census
    figures (6663 on three vertices, 280 distinct homology signatures)
    count structures with at least one arrow.  Pass ``include_arrowless``
    for the complete enumeration, which has exactly one more class.
    """
    return _enumerate(n_vertices, q_only=False, include_arrowless=include_arrowless)


def enumerate_q_graphs(n_vertices: int, include_arrowless: bool = False) -> list[SelfIndexedGraph]:
    """Canonical representatives of the q-graphs (every vertex carries its
    self-labeled loop, so the arrowless flag only matters for n = 0).
    Practical through n = 4 (34^4 labeled structures there)."""
    return _enumerate(n_vertices, q_only=True, include_arrowless=include_arrowless)


def count_labeled_structures(n_vertices: int, q_only: bool = False) -> int:
    injections = partial_injections(n_vertices)
    if not q_only:
        return len(injections) ** n_vertices
    out = 1
    for lab in range(n_vertices):
        out *= sum(1 for inj in injections if inj[lab] == lab)
    return out


def burnside_class_count(n_vertices: int, q_only: bool = False) -> int:
    """Isomorphism class count by Burnside's lemma, an independent check of
    the canonical-form enumeration.

    A permutation fixes a labeled structure iff along each of its cycles
    the injection at the starting label determines the rest and returns to
    itself after conjugating around the cycle.
    """
    n = n_vertices
    injections = partial_injections(n)
    total = 0
    perms = list(permutations(range(n)))
    for perm in perms:

        def conj(inj):
            out = [-1] * n
            for b in range(n):
                if inj[b] >= 0:
                    out[perm[b]] = perm[inj[b]]
            return tuple(out)

        seen = set()
        fixed = 1
        for start in range(n):
            if start in seen:
                continue
            cyc = [start]
            x = perm[start]
            while x != start:
                cyc.append(x)
                x = perm[x]
            seen.update(cyc)
            cnt = 0
            for f in injections:
                if q_only and f[start] != start:
                    continue
                g = f
                for _ in cyc:
                    g = conj(g)
                if g == f:
                    cnt += 1
            fixed *= cnt
        total += fixed
    return total // len(perms)


@dataclass(frozen=True)
class CensusRow:
    key: bytes
    graph: SelfIndexedGraph
    kind: str  # "r" or "q"
    plain: tuple[HomologyGroup, ...]
    quotient: tuple[HomologyGroup, ...] | None  # q-graphs only


def census_row(g: SelfIndexedGraph, max_degree: int) -> CensusRow:
    kind = classify(g)
    plain = homology_range(g, max_degree)
    quot = homology_range(g, max_degree, q_quotient=True) if kind == "q" else None
    return CensusRow(canonical_form(g).key, g, kind, plain, quot)


def _sig_str(groups) -> str:
    return ",".join(h.format() for h in groups)


def _betti_str(groups) -> str:
    return ",".join(str(h.betti) for h in groups)


@dataclass(frozen=True)
class SignatureCensus:
    rows: tuple[CensusRow, ...]
    max_degree: int

    def distinct_counts(self) -> dict[str, int]:
        """Distinct signature counts under several conventions: plain or
        q-quotient homology, torsion-inclusive or Betti-only."""
        out = {}
        out["plain/torsion"] = len({_sig_str(r.plain) for r in self.rows})
        out["plain/betti"] = len({_betti_str(r.plain) for r in self.rows})
        if all(r.quotient is not None for r in self.rows) and self.rows:
            out["quotient/torsion"] = len({_sig_str(r.quotient) for r in self.rows})
            out["quotient/betti"] = len({_betti_str(r.quotient) for r in self.rows})
        return out

    def table(self) -> str:
        lines = []
        for r in self.rows:
            cols = [r.key.decode(), r.kind, _sig_str(r.plain)]
            if r.quotient is not None:
                cols.append(_sig_str(r.quotient))
            lines.append("\t".join(cols))
        return "\n".join(lines) + "\n"


def signature_census(graphs, max_degree: int = 5, jobs: int = 1) -> SignatureCensus:
    """Homology signatures (degrees 1..max_degree) for a family of census
    representatives; deterministic row order by canonical key."""
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            rows = pool.starmap(census_row, [(g, max_degree) for g in graphs], chunksize=8)
    else:
        rows = [census_row(g, max_degree) for g in graphs]
    rows.sort(key=lambda r: r.key)
    return SignatureCensus(tuple(rows), max_degree)
