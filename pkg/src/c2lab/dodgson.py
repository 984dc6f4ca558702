"""Signed Dodgson polynomials via a fraction-free determinant.

The expanded Laplacian of a graph with E edges and V vertices is the
(E+V)-square symmetric matrix with the edge variables on the edge-row
diagonal and signed incidence entries between edge rows and vertex columns
(+1 where an edge leaves a vertex, -1 where it enters; self-loops contribute
no incidence entries).  Rows and columns are ordered edges-then-vertices, so
position iota(edge e) = e and iota(vertex i) = E + 1 + i.

psi(g, I, J, K) strikes the rows I+v and columns J+v (v a chosen vertex,
highest index by default), sets the K variables to zero, and multiplies the
determinant by

    (-1)^(V-1 + sum_I iota + sum_J iota) * sgn(Iv) * sgn(Jv)

where sgn of a word is the sign of the permutation sorting it into position
order (0 on a repeated letter).  The result does not depend on the edge/vertex
ordering or on the choice of v, and flips sign when an edge occurring in
exactly one of I, J is reoriented.
"""

from __future__ import annotations

from itertools import combinations

from .multigraph import GraphSum, Multigraph
from .poly import Poly


def word_sign(word) -> int:
    """Sign of the permutation sorting `word` ascending; 0 on repeats."""
    n = len(word)
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if word[i] == word[j]:
                return 0
            if word[i] > word[j]:
                sign = -sign
    return sign


def expanded_laplacian(g: Multigraph, nullified=()) -> list[list[Poly]]:
    """(E+V)-square matrix of Poly entries; variables are edge labels."""
    E, V = g.edge_count, g.vertex_count
    null = set(nullified)
    n = E + V
    zero = Poly.zero()
    m = [[zero] * n for _ in range(n)]
    for lab in g.labels():
        if lab not in null:
            m[lab - 1][lab - 1] = Poly.var(lab)
        t, h = g.endpoints(lab)
        if t == h:
            continue
        m[lab - 1][E + t] = m[E + t][lab - 1] = Poly.const(1)
        m[lab - 1][E + h] = m[E + h][lab - 1] = Poly.const(-1)
    return m


def bareiss_det(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free determinant with sparsity-aware pivoting."""
    n = len(matrix)
    if n == 0:
        return Poly.const(1)
    m = [row[:] for row in matrix]
    sign = 1
    prev = Poly.const(1)
    for k in range(n):
        # choose the cheapest nonzero pivot in the remaining submatrix
        best = None
        for i in range(k, n):
            row = m[i]
            for j in range(k, n):
                p = row[j]
                if p.is_zero():
                    continue
                cost = (0 if p.is_const() else 1, p.term_count())
                if best is None or cost < best[0]:
                    best = (cost, i, j)
            if best is not None and best[0][0] == 0:
                break
        if best is None:
            return Poly.zero()
        _, pi, pj = best
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            sign = -sign
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        piv = m[k][k]
        prev_const = prev.is_const()
        prev_c = prev.const_value() if prev_const else 0
        for i in range(k + 1, n):
            rik = m[i][k]
            rik_zero = rik.is_zero()
            for j in range(k + 1, n):
                num = piv * m[i][j]
                if not rik_zero:
                    num = num - rik * m[k][j]
                if prev_const and prev_c == 1:
                    m[i][j] = num
                else:
                    q = num.exact_div(prev)
                    assert q is not None, "Bareiss division not exact"
                    m[i][j] = q
        prev = piv
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def _iota_vertex(g: Multigraph, v: int) -> int:
    return g.edge_count + 1 + v


def psi(g, I=(), J=(), K=(), strike_vertex: int | None = None) -> Poly:
    """Signed Dodgson polynomial Psi^{I,J}_K.

    I, J are words (sequences) of edge labels; K is a set of edge labels
    whose variables are nullified.  Accepts a GraphSum and extends linearly.
    """
    if isinstance(g, GraphSum):
        out = Poly.zero()
        for coeff, term in g.terms:
            out = out + coeff * psi(term, I, J, K, strike_vertex)
        return out
    I = tuple(I)
    J = tuple(J)
    if len(I) != len(J):
        return Poly.zero()
    for lab in (*I, *J, *K):
        if not 1 <= lab <= g.edge_count:
            raise ValueError(f"no edge {lab}")
    v = g.vertex_count - 1 if strike_vertex is None else strike_vertex
    iv = _iota_vertex(g, v)
    sI = word_sign(tuple(I) + (iv,))
    sJ = word_sign(tuple(J) + (iv,))
    if sI == 0 or sJ == 0:
        return Poly.zero()
    m = expanded_laplacian(g, nullified=K)
    rows = sorted(set(I) | {iv})
    cols = sorted(set(J) | {iv})
    keep_r = [i for i in range(len(m)) if i + 1 not in rows]
    keep_c = [j for j in range(len(m)) if j + 1 not in cols]
    sub = [[m[i][j] for j in keep_c] for i in keep_r]
    det = bareiss_det(sub)
    sign = sI * sJ
    if (g.vertex_count - 1 + sum(I) + sum(J)) % 2:
        sign = -sign
    return det if sign == 1 else -det


def graph_poly(g: Multigraph) -> Poly:
    """Kirchhoff polynomial via the determinant route: psi(g)."""
    return psi(g)


def spanning_tree_poly(g: Multigraph) -> Poly:
    """Independent oracle: sum over spanning trees of the product of the
    variables *not* in the tree.  Zero for disconnected graphs."""
    if not g.is_connected():
        return Poly.zero()
    E, V = g.edge_count, g.vertex_count
    out = Poly.zero()
    labels = list(g.labels())
    for tree in combinations(labels, V - 1):
        parent = list(range(V))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for lab in tree:
            t, h = g.endpoints(lab)
            rt, rh = find(t), find(h)
            if rt == rh:
                ok = False
                break
            parent[rt] = rh
        if not ok:
            continue
        inside = set(tree)
        out = out + Poly.term(1, {lab: 1 for lab in labels if lab not in inside})
    return out


def three_valent_data(g: Multigraph, v: int) -> tuple[Poly, Poly, Poly, Poly, Poly]:
    """(f0, f1, f2, f3, f123) at a 3-valent vertex v with no self-loops.

    With the incident edges sorted ascending as (e1, e2, e3) and locally
    reoriented out of v:  f0 = psi^{e1e2,e1e2}_{e3}, f1 = psi^{e2,e3}_{e1},
    f2 = psi^{e1,e3}_{e2}, f3 = psi^{e1,e2}_{e3}, f123 = psi_{e1e2e3}.
    These satisfy  psi = f0*(x1x2+x1x3+x2x3) - (f2+f3)x1 - (f1+f3)x2
    - (f1+f2)x3 + f123  and  f0*f123 = f1f2 + f1f3 + f2f3.
    """
    inc = sorted(g.incident(v))
    if len(inc) != 3 or g.degree(v) != 3:
        raise ValueError(f"vertex {v} is not 3-valent")
    h = g.reorient({lab: v for lab in inc})
    e1, e2, e3 = inc
    f0 = psi(h, (e1, e2), (e1, e2), (e3,))
    f1 = psi(h, (e2,), (e3,), (e1,))
    f2 = psi(h, (e1,), (e3,), (e2,))
    f3 = psi(h, (e1,), (e2,), (e3,))
    f123 = psi(h, (), (), (e1, e2, e3))
    return f0, f1, f2, f3, f123


def five_invariant(g: Multigraph, edges: tuple[int, int, int, int, int]) -> Poly:
    """psi^{125,345} psi^{13,24}_5 - psi^{135,245} psi^{12,34}_5 for the five
    given edge labels (in the roles 1..5)."""
    e1, e2, e3, e4, e5 = edges
    return (psi(g, (e1, e2, e5), (e3, e4, e5)) * psi(g, (e1, e3), (e2, e4), (e5,))
            - psi(g, (e1, e3, e5), (e2, e4, e5)) * psi(g, (e1, e2), (e3, e4), (e5,)))
