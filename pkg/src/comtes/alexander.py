"""Alexander relation matrices and polynomials of a self-indexed graph.

The module over Z[t, t^-1] is generated by the vertices with one relation
per arrow b --a--> c, namely c = t*b + (1-t)*a.  Delta_i is the gcd of all
minors of rank #V - i of the relation matrix, unit-normalized.
"""

from __future__ import annotations

from itertools import combinations

from .core import SelfIndexedGraph, component_index, components
from .laurent import Laurent, MultiLaurent, divexact, laurent_gcd


def relation_matrix(g: SelfIndexedGraph) -> list[list[Laurent]]:
    """One row per arrow, one column per vertex (in vertex order).

    An arrow b --a--> c contributes t at b, -1 at c and 1-t at a; entries
    accumulate when those vertices coincide.
    """
    idx = g.vertex_index()
    n = len(g.vertices)
    rows = []
    for a in g.arrows:
        row = [Laurent.zero()] * n
        row[idx[a.source]] = row[idx[a.source]] + Laurent.t()
        row[idx[a.target]] = row[idx[a.target]] + Laurent.const(-1)
        row[idx[a.label]] = row[idx[a.label]] + (Laurent.one() - Laurent.t())
        rows.append(row)
    return rows


def _det(matrix: list[list[Laurent]]) -> Laurent:
    """Fraction-free (Bareiss) determinant over the Laurent ring."""
    n = len(matrix)
    if n == 0:
        return Laurent.one()
    m = [row[:] for row in matrix]
    sign = 1
    prev = Laurent.one()
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Laurent.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = Laurent.zero()
        prev = m[k][k]
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def minors_gcd(matrix: list[list[Laurent]], r: int) -> Laurent:
    """Unit-normalized gcd of all r x r minors; zero when all minors vanish.

    The running gcd short-circuits to 1 as soon as it normalizes to 1.
    """
    one = Laurent.one()
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if r == 0:
        return one
    if r > nrows or r > ncols:
        return Laurent.zero()
    acc = Laurent.zero()
    for rows in combinations(range(nrows), r):
        for cols in combinations(range(ncols), r):
            d = _det([[matrix[i][j] for j in cols] for i in rows])
            acc = laurent_gcd(acc, d)
            if acc == one:
                return one
    return acc.unit_normalize()


def alexander_polynomial(g: SelfIndexedGraph, i: int) -> Laurent:
    """Delta_i: gcd of the rank (#V - i) minors of the relation matrix.

    Conventions: Delta_i = 1 when #V - i <= 0, and Delta_i = 0 when
    #V - i >= #E + 1.  The result is unit-normalized, so equality is exact.
    """
    if i < 0:
        raise ValueError("index must be nonnegative")
    nv = len(g.vertices)
    ne = len(g.arrows)
    r = nv - i
    if r <= 0:
        return Laurent.one()
    if r >= ne + 1:
        return Laurent.zero()
    return minors_gcd(relation_matrix(g), r)


def multivariable_relation_matrix(
    g: SelfIndexedGraph, *, label_sign: int = 1
) -> list[list[MultiLaurent]]:
    """Relation matrix over Z[t_1^+-, ..., t_n^+-], n = number of components.

    An arrow b --a--> c, with the label a in component i and the source and
    target in component j, contributes t_i at b, -1 at c and
    ``label_sign * (1 - t_j)`` at a.  The default ``label_sign=1``
    specializes (all t_k := t) to the one-variable matrix; ``label_sign=-1``
    is the alternative sign convention, kept behind this switch.
    """
    if label_sign not in (1, -1):
        raise ValueError("label_sign must be +1 or -1")
    comps = components(g)
    cidx = component_index(g)
    n = len(comps)
    vidx = g.vertex_index()
    nv = len(g.vertices)
    rows = []
    for a in g.arrows:
        i = cidx[a.label]
        j = cidx[a.source]
        row = [MultiLaurent.zero(n)] * nv
        row[vidx[a.source]] = row[vidx[a.source]] + MultiLaurent.var(n, i)
        row[vidx[a.target]] = row[vidx[a.target]] + MultiLaurent.const(n, -1)
        lab = MultiLaurent.const(n, label_sign) - MultiLaurent.var(n, j, label_sign)
        row[vidx[a.label]] = row[vidx[a.label]] + lab
        rows.append(row)
    return rows
