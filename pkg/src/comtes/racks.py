"""Finite racks and quandles as operation tables, 2-cocycles, group rings.

Elements are 0..n-1 and table[x][y] = x |> y.  The abelian coefficient
group A is a product of cyclic groups, written additively internally; group
ring elements are sparse multiplicity maps keyed by A-elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Arrow, SelfIndexedGraph


@dataclass(frozen=True)
class RackCheck:
    kind: str                 # "not_rack" | "rack" | "quandle"
    witness: str | None = None


def check_rack(table) -> RackCheck:
    """Check the rack axioms; the witness names the first failing instance."""
    n = len(table)
    for x, row in enumerate(table):
        if len(row) != n:
            return RackCheck("not_rack", f"row {x} has length {len(row)}, expected {n}")
        if any(not 0 <= v < n for v in row):
            return RackCheck("not_rack", f"row {x} contains an out-of-range value")
        if len(set(row)) != n:
            return RackCheck("not_rack", f"row {x} (the map {x} |> ?) is not a bijection")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]]:
                    return RackCheck(
                        "not_rack",
                        f"self-distributivity fails at ({x},{y},{z})",
                    )
    if all(table[x][x] == x for x in range(n)):
        return RackCheck("quandle")
    return RackCheck("rack")


@dataclass(frozen=True)
class FiniteRack:
    n: int
    table: tuple[tuple[int, ...], ...]
    quandle: bool

    @staticmethod
    def from_table(table) -> "FiniteRack":
        chk = check_rack(table)
        if chk.kind == "not_rack":
            raise ValueError(f"not a rack: {chk.witness}")
        return FiniteRack(len(table), tuple(tuple(r) for r in table), chk.kind == "quandle")

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]


def trivial_quandle(n: int) -> FiniteRack:
    """x |> y = y."""
    return FiniteRack.from_table([[y for y in range(n)] for _ in range(n)])


def dihedral_quandle(n: int) -> FiniteRack:
    """x |> y = 2x - y mod n."""
    return FiniteRack.from_table([[(2 * x - y) % n for y in range(n)] for x in range(n)])


# The 4-element quandle on the vertices of a tetrahedron: each element acts
# by the rotation fixing it.  Concretely it is the affine quandle over the
# field with four elements, x |> y = (1 + w) x + w y, under the element
# order (0, 1, w, 1 + w).  GF(4) elements are encoded as bit pairs p + q*w
# with w^2 = w + 1.

_F4_OF_ID = ((0, 0), (1, 0), (0, 1), (1, 1))
_ID_OF_F4 = {e: i for i, e in enumerate(_F4_OF_ID)}


def _f4_add(a, b):
    return (a[0] ^ b[0], a[1] ^ b[1])


def _f4_mul(a, b):
    p, q = a
    r, s = b
    return (p * r ^ q * s, p * s ^ q * r ^ q * s)


def tetrahedron_quandle() -> FiniteRack:
    w = _F4_OF_ID[2]
    one_w = _F4_OF_ID[3]
    table = []
    for x in range(4):
        row = []
        for y in range(4):
            val = _f4_add(_f4_mul(one_w, _F4_OF_ID[x]), _f4_mul(w, _F4_OF_ID[y]))
            row.append(_ID_OF_F4[val])
        table.append(row)
    return FiniteRack.from_table(table)


BUILTIN_RACKS = ("trivial1", "trivial2", "trivial3", "dihedral3", "tetrahedron")


def builtin_rack(name: str) -> FiniteRack:
    if name.startswith("trivial"):
        return trivial_quandle(int(name[len("trivial"):]))
    if name == "dihedral3":
        return dihedral_quandle(3)
    if name == "tetrahedron":
        return tetrahedron_quandle()
    raise ValueError(f"unknown builtin rack {name!r}")


def graph_of_rack(x: FiniteRack) -> SelfIndexedGraph:
    """The self-indexed graph of a rack: one vertex per element, and for
    every pair (a, b) an arrow b --a--> a|>b.  Vertices are the decimal
    element names; arrows are ordered by (a, b)."""
    verts = tuple(str(i) for i in range(x.n))
    arrows = tuple(
        Arrow(str(b), str(x.op(a, b)), str(a)) for a in range(x.n) for b in range(x.n)
    )
    return SelfIndexedGraph(verts, arrows)


def rack_arrow_index(x: FiniteRack, a: int, b: int) -> int:
    """Index in graph_of_rack(x).arrows of the arrow with label a, source b."""
    return a * x.n + b


# ---------------------------------------------------------------------------
# Abelian coefficient groups and group rings


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups Z/m1 x ... x Z/mk, elements are residue
    tuples.  Written multiplicatively in formulas, additively in code."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(m < 1 for m in self.orders):
            raise ValueError("cyclic orders must be positive")

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.orders))

    def scale(self, a, k: int):
        return tuple((x * k) % m for x, m in zip(a, self.orders))

    def elements(self):
        def rec(i):
            if i == len(self.orders):
                yield ()
                return
            for rest in rec(i + 1):
                for v in range(self.orders[i]):
                    yield (v,) + rest

        return sorted(rec(0))

    def order(self) -> int:
        out = 1
        for m in self.orders:
            out *= m
        return out


C2 = AbelianGroup((2,))


def ring_add(r1: dict, r2: dict) -> dict:
    out = dict(r1)
    for g, n in r2.items():
        out[g] = out.get(g, 0) + n
        if not out[g]:
            del out[g]
    return out


def epsilon(r: dict) -> int:
    """Augmentation: the sum of multiplicities (= number of contributing
    colorings for the state-sum invariants)."""
    return sum(r.values())


def format_group_ring(r: dict, group: AbelianGroup) -> str:
    """Render e.g. {identity: 4, (1,): 12} over C2 as ``4 + 12*s``.

    Generators of the cyclic factors are named s for a single factor and
    s1, s2, ... otherwise.
    """
    if not r:
        return "0"
    k = len(group.orders)
    names = ["s"] if k == 1 else [f"s{i + 1}" for i in range(k)]

    def elt(g):
        factors = []
        for i, e in enumerate(g):
            if e == 1:
                factors.append(names[i])
            elif e:
                factors.append(f"{names[i]}^{e}")
        return "*".join(factors)

    parts = []
    for g in sorted(r):
        n = r[g]
        body = elt(g)
        if not body:
            term = str(n)
        elif n == 1:
            term = body
        elif n == -1:
            term = f"-{body}"
        else:
            term = f"{n}*{body}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# ---------------------------------------------------------------------------
# 2-cocycles


@dataclass(frozen=True)
class Cocycle2:
    """A quandle 2-cocycle with values in A: f(x|>y, x|>z) + f(x, z) =
    f(x, y|>z) + f(y, z) and f(x, x) = 0 (written additively)."""

    group: AbelianGroup
    values: tuple[tuple[tuple[int, ...], ...], ...]  # values[x][y] in A

    def value(self, x: int, y: int):
        return self.values[x][y]

    @property
    def n(self) -> int:
        return len(self.values)


def check_cocycle(rack: FiniteRack, f: Cocycle2) -> str | None:
    """None when f is a quandle 2-cocycle, else a witness description."""
    g = f.group
    n = rack.n
    for x in range(n):
        if f.value(x, x) != g.identity:
            return f"f({x},{x}) is not the identity"
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = g.add(f.value(rack.op(x, y), rack.op(x, z)), f.value(x, z))
                rhs = g.add(f.value(x, rack.op(y, z)), f.value(y, z))
                if lhs != rhs:
                    return f"cocycle condition fails at ({x},{y},{z})"
    return None


def tetrahedron_cocycle() -> Cocycle2:
    """The nontrivial 2-cocycle of the tetrahedron quandle with values in
    C2: f(x, y) = s unless x = 0, y = 0 or x = y (there x*y*(x - y)
    vanishes in GF(4)), where it is 1."""
    vals = []
    for x in range(4):
        row = []
        for y in range(4):
            trivial = x == 0 or y == 0 or x == y
            row.append((0,) if trivial else (1,))
        vals.append(tuple(row))
    return Cocycle2(C2, tuple(vals))


def constant_cocycle(n: int, group: AbelianGroup) -> Cocycle2:
    return Cocycle2(group, tuple(tuple(group.identity for _ in range(n)) for _ in range(n)))


# ---------------------------------------------------------------------------
# Text formats


def format_rack_table(x: FiniteRack) -> str:
    lines = [str(x.n)]
    lines += [" ".join(str(v) for v in row) for row in x.table]
    return "\n".join(lines) + "\n"


def parse_rack_table(text: str) -> FiniteRack:
    """First line n, then n rows of n integers."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty rack table")
    n = int(tokens[0])
    if len(tokens) != 1 + n * n:
        raise ValueError(f"expected {n * n} table entries, got {len(tokens) - 1}")
    vals = [int(v) for v in tokens[1:]]
    table = [vals[i * n : (i + 1) * n] for i in range(n)]
    return FiniteRack.from_table(table)


def format_cocycle(f: Cocycle2) -> str:
    lines = ["A: " + ",".join(str(m) for m in f.group.orders)]
    for x in range(f.n):
        for y in range(f.n):
            lines.append(f"{x} {y} -> " + ",".join(str(v) for v in f.value(x, y)))
    return "\n".join(lines) + "\n"


def parse_cocycle(text: str) -> Cocycle2:
    """Header ``A: m1,m2,...`` then lines ``x y -> a`` with the A-element as
    comma-separated residues.  Missing pairs default to the identity."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("A:"):
        raise ValueError("cocycle file must start with an 'A: m1,m2,...' line")
    orders = tuple(int(v) for v in lines[0][2:].split(","))
    group = AbelianGroup(orders)
    entries = {}
    n = 0
    for ln in lines[1:]:
        lhs, _, rhs = ln.partition("->")
        x, y = (int(v) for v in lhs.split())
        vec = tuple(int(v) % m for v, m in zip((int(s) for s in rhs.split(",")), orders))
        if len(vec) != len(orders):
            raise ValueError(f"bad A-element in line {ln!r}")
        entries[(x, y)] = vec
        n = max(n, x + 1, y + 1)
    vals = tuple(
        tuple(entries.get((x, y), group.identity) for y in range(n)) for x in range(n)
    )
    return Cocycle2(group, vals)
