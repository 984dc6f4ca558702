"""Labelled multigraphs with ordered, oriented edges.

Edges are stored as (tail, head) pairs of 0-based vertex indices; parallel
edges and self-loops are allowed.  Edge *labels* are positional and 1-based:
edge i in the tuple has label i+1.  Minors keep the relative order of the
surviving edges, which defines the label translation between a graph and its
minors.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for t, h in self.edges:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise ValueError(f"edge ({t},{h}) out of range")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def labels(self) -> range:
        return range(1, len(self.edges) + 1)

    def endpoints(self, label: int) -> tuple[int, int]:
        return self.edges[label - 1]

    def incident(self, v: int) -> list[int]:
        """Labels of edges incident to v (self-loops listed once)."""
        return [i + 1 for i, (t, h) in enumerate(self.edges) if t == v or h == v]

    def degree(self, v: int) -> int:
        d = 0
        for t, h in self.edges:
            d += (t == v) + (h == v)
        return d

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for t, h in self.edges:
            if t == v and h != v:
                out.add(h)
            elif h == v and t != v:
                out.add(t)
        return out

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for t, h in self.edges if {t, h} == {u, v})

    def components(self) -> list[int]:
        """Component id per vertex."""
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t, h in self.edges:
            rt, rh = find(t), find(h)
            if rt != rh:
                parent[rt] = rh
        return [find(v) for v in range(self.vertex_count)]

    def betti(self) -> tuple[int, int]:
        """(h0, h1): component count and independent cycle count."""
        h0 = len(set(self.components()))
        h1 = len(self.edges) - self.vertex_count + h0
        return h0, h1

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(set(self.components())) == 1

    def reorient(self, labels_out_of: dict[int, int]) -> "Multigraph":
        """Flip the listed edges so each one has the given tail vertex."""
        edges = list(self.edges)
        for label, tail in labels_out_of.items():
            t, h = edges[label - 1]
            if h == tail and t != tail:
                edges[label - 1] = (h, t)
            elif t != tail:
                raise ValueError(f"edge {label} not incident to {tail}")
        return Multigraph(self.vertex_count, tuple(edges))

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"v {self.vertex_count}"]
        lines += [f"e {t} {h}" for t, h in self.edges]
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]


def parse_graphs(text: str) -> list[Multigraph]:
    """Parse one or more graphs: 'v <n>' starts a graph, 'e <tail> <head>'
    adds an edge (labels are 1-based in file order); '#' starts a comment."""
    graphs: list[Multigraph] = []
    n = None
    edges: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "v":
            if len(toks) != 2:
                raise ValueError(f"bad vertex line: {raw!r}")
            if n is not None:
                graphs.append(Multigraph(n, tuple(edges)))
            n = int(toks[1])
            edges = []
        elif toks[0] == "e":
            if len(toks) != 3:
                raise ValueError(f"bad edge line: {raw!r}")
            if n is None:
                raise ValueError("edge before vertex count")
            edges.append((int(toks[1]), int(toks[2])))
        else:
            raise ValueError(f"unrecognized line: {raw!r}")
    if n is not None:
        graphs.append(Multigraph(n, tuple(edges)))
    return graphs


def parse_graph(text: str) -> Multigraph:
    gs = parse_graphs(text)
    if len(gs) != 1:
        raise ValueError(f"expected one graph, found {len(gs)}")
    return gs[0]


# -- minors -------------------------------------------------------------------


def labeled_minor(g: Multigraph, delete=(), contract=()):
    """Delete/contract edges by label.

    Returns (minor, label_map old->new), or None when the contracted set
    contains a cycle (equivalently: some contraction hits a self-loop).
    Surviving edges keep their relative order.
    """
    delete = set(delete)
    contract = set(contract)
    if delete & contract:
        raise ValueError("delete and contract sets overlap")
    for lab in delete | contract:
        if not 1 <= lab <= g.edge_count:
            raise ValueError(f"no edge {lab}")
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab in sorted(contract):
        t, h = g.endpoints(lab)
        rt, rh = find(t), find(h)
        if rt == rh:
            return None
        parent[rt] = rh
    classes: dict[int, int] = {}
    for v in range(g.vertex_count):
        r = find(v)
        if r not in classes:
            classes[r] = len(classes)
    vmap = [classes[find(v)] for v in range(g.vertex_count)]
    # renumber classes by smallest original member for determinism
    order = sorted(range(len(classes)), key=lambda c: vmap.index(c))
    rank = {c: i for i, c in enumerate(order)}
    vmap = [rank[c] for c in vmap]
    edges = []
    label_map: dict[int, int] = {}
    for lab in g.labels():
        if lab in delete or lab in contract:
            continue
        t, h = g.endpoints(lab)
        edges.append((vmap[t], vmap[h]))
        label_map[lab] = len(edges)
    return Multigraph(len(classes), tuple(edges)), label_map


@dataclass(frozen=True)
class GraphSum:
    """Integer linear combination of multigraphs."""

    terms: tuple[tuple[int, Multigraph], ...] = ()

    @classmethod
    def zero(cls) -> "GraphSum":
        return cls(())

    @classmethod
    def of(cls, g: Multigraph, coeff: int = 1) -> "GraphSum":
        return cls(((coeff, g),)) if coeff else cls(())

    def __add__(self, other: "GraphSum") -> "GraphSum":
        return GraphSum(self.terms + other.terms)

    def __sub__(self, other: "GraphSum") -> "GraphSum":
        return self + other.scale(-1)

    def scale(self, c: int) -> "GraphSum":
        if not c:
            return GraphSum.zero()
        return GraphSum(tuple((c * k, g) for k, g in self.terms))


def minor(g: Multigraph, delete=(), contract=()) -> GraphSum:
    """Graph minor as a GraphSum (empty when a contraction hits a cycle)."""
    res = labeled_minor(g, delete, contract)
    if res is None:
        return GraphSum.zero()
    return GraphSum.of(res[0])


def delete_vertices(g: Multigraph, vertices) -> tuple[Multigraph, dict[int, int]]:
    """Remove vertices and all incident edges; returns (graph, label map)."""
    drop = set(vertices)
    keep = [v for v in range(g.vertex_count) if v not in drop]
    vmap = {v: i for i, v in enumerate(keep)}
    edges = []
    label_map: dict[int, int] = {}
    for lab in g.labels():
        t, h = g.endpoints(lab)
        if t in drop or h in drop:
            continue
        edges.append((vmap[t], vmap[h]))
        label_map[lab] = len(edges)
    return Multigraph(len(keep), tuple(edges)), label_map


# -- completion / decompletion ------------------------------------------------


def completion(g: Multigraph) -> Multigraph:
    """Join a new vertex to the four 3-valent vertices of a graph whose other
    vertices are all 4-valent (no self-loops allowed)."""
    if any(t == h for t, h in g.edges):
        raise ValueError("self-loops cannot be completed")
    three = [v for v in range(g.vertex_count) if g.degree(v) == 3]
    four = [v for v in range(g.vertex_count) if g.degree(v) == 4]
    if len(three) != 4 or len(three) + len(four) != g.vertex_count:
        raise ValueError("completion needs exactly four 3-valent vertices, rest 4-valent")
    new = g.vertex_count
    edges = g.edges + tuple((v, new) for v in three)
    return Multigraph(new + 1, edges)


def decompletion(g: Multigraph, v: int) -> Multigraph:
    """Remove one vertex and its edges."""
    return delete_vertices(g, [v])[0]


# -- double-triangle reduction --------------------------------------------------


def double_triangle_step(g: Multigraph) -> Multigraph | None:
    """One double-triangle reduction, or None when no site exists.

    A site is an edge ab lying in exactly two triangles abc and abd, with a
    4-valent with distinct neighbors b, c, d, e and e not adjacent to b.  The
    vertex a is removed and edges cd, be appended.  The lexicographically
    smallest ordered pair (a, b) is used.
    """
    for a in range(g.vertex_count):
        if g.degree(a) != 4:
            continue
        nb = sorted(g.neighbors(a))
        if len(nb) != 4 or any(g.multiplicity(a, x) != 1 for x in nb):
            continue
        for b in nb:
            common = [w for w in range(g.vertex_count)
                      if w not in (a, b) and g.multiplicity(a, w) and g.multiplicity(b, w)]
            tri = sum(g.multiplicity(a, w) * g.multiplicity(b, w) for w in common)
            if tri != 2 or len(common) != 2:
                continue
            c, d = common
            rest = [x for x in nb if x not in (b, c, d)]
            if len(rest) != 1:
                continue
            e = rest[0]
            if g.multiplicity(e, b):
                continue
            kept = [ed for ed in g.edges if a not in ed]
            kept.append((c, d))
            kept.append((b, e))
            vmap = {v: i for i, v in enumerate(x for x in range(g.vertex_count) if x != a)}
            edges = tuple((vmap[t], vmap[h]) for t, h in kept)
            return Multigraph(g.vertex_count - 1, edges)
    return None


def double_triangle_reduce(g: Multigraph) -> tuple[Multigraph, int]:
    """Reduce to a fixpoint; returns (ancestor, number of steps)."""
    steps = 0
    while True:
        nxt = double_triangle_step(g)
        if nxt is None:
            return g, steps
        g, steps = nxt, steps + 1


# -- prime ancestor predicate ----------------------------------------------------


@dataclass(frozen=True)
class AncestorReport:
    passes: bool
    four_regular: bool
    min_order: bool
    vertex_connectivity: bool
    internally_six_connected: bool
    no_double_triangle: bool

    def failures(self) -> list[str]:
        out = []
        for name in ("four_regular", "min_order", "vertex_connectivity",
                     "internally_six_connected", "no_double_triangle"):
            if not getattr(self, name):
                out.append(name)
        return out


def _nx_capacity_graph(g: Multigraph):
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    for t, h in g.edges:
        if t == h:
            continue
        if G.has_edge(t, h):
            G[t][h]["capacity"] += 1
        else:
            G.add_edge(t, h, capacity=1)
    return G


def _internally_six_connected(g: Multigraph) -> bool:
    """Every edge cut with >= 2 vertices on each side has >= 6 edges."""
    import networkx as nx

    n = g.vertex_count
    if n < 4:
        return False
    base = _nx_capacity_graph(g)
    verts = list(range(n))
    s1 = 0
    for s2 in verts[1:]:
        others = [v for v in verts if v not in (s1, s2)]
        for t1, t2 in combinations(others, 2):
            G = nx.contracted_nodes(base, s1, s2, self_loops=False)
            G = nx.contracted_nodes(G, t1, t2, self_loops=False)
            # merge parallel capacities created by contraction
            cut = nx.maximum_flow_value(G, s1, t1, capacity="capacity")
            if cut < 6:
                return False
    return True


def is_prime_ancestor(g: Multigraph) -> AncestorReport:
    """Predicate for completed primitive graphs worth keeping in a census:
    4-regular, >= 5 vertices, vertex-connectivity 4, internally 6-connected,
    and no edge lying in exactly two triangles."""
    import networkx as nx

    four_regular = all(g.degree(v) == 4 for v in range(g.vertex_count)) and \
        not any(t == h for t, h in g.edges)
    min_order = g.vertex_count >= 5
    simple = nx.Graph()
    simple.add_nodes_from(range(g.vertex_count))
    simple.add_edges_from((t, h) for t, h in g.edges if t != h)
    vertex_conn = min_order and nx.node_connectivity(simple) == 4
    internal = four_regular and min_order and _internally_six_connected(g)
    no_dt = True
    for t, h in set((min(e), max(e)) for e in g.edges if e[0] != e[1]):
        common = [w for w in range(g.vertex_count)
                  if w not in (t, h) and g.multiplicity(t, w) and g.multiplicity(h, w)]
        tri = sum(g.multiplicity(t, w) * g.multiplicity(h, w) for w in common)
        if tri == 2:
            no_dt = False
            break
    passes = four_regular and min_order and vertex_conn and internal and no_dt
    return AncestorReport(passes, four_regular, min_order, vertex_conn,
                          internal, no_dt)


# -- structure detection ----------------------------------------------------------


@dataclass
class Fig1Structure:
    """Two 3-valent vertices with disjoint edge stars, optionally extended by
    a 3-valent neighbor on each side (roles: 1..5 on the u side, a..e on the
    w side; the ABC field names a third 3-valent vertex untouched by the
    plotted part, when one exists)."""

    case: str  # 'generic' | 'triangle' | 'hourglass'
    labels: dict[str, int]
    vertices: dict[str, int]
    abc: tuple[int, tuple[int, int, int]] | None = None

    @property
    def order(self) -> int:
        return {"generic": 6, "triangle": 8, "hourglass": 10}[self.case]


@dataclass
class Fig2Structure:
    """Square-rich arrangement: 3-valent u3 (edges 1,2,3 to x1,x2,m), 3-valent
    w3 (edges a to m, plus b,c), 3-valent t (edges A,B,C to m,x2,x1) and the
    fourth edge 4 at the 4-valent vertex m.  Variant 'twelve' when c joins w3
    to x2, else 'eight'."""

    variant: str
    labels: dict[str, int]
    vertices: dict[str, int]


@dataclass
class StructureReport:
    three_valent: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    fig1: list[Fig1Structure] = field(default_factory=list)
    fig2: list[Fig2Structure] = field(default_factory=list)


def _plain_three_valent(g: Multigraph, v: int) -> tuple[int, ...] | None:
    inc = g.incident(v)
    if len(inc) != 3 or g.degree(v) != 3:
        return None
    return tuple(sorted(inc))


def _leg_extension(g: Multigraph, u: int, exclude: set[int]):
    """If some edge at u leads to a 3-valent neighbor u' (single connecting
    edge, u' not in exclude), return (edge1, u', (leg, leg)); else None."""
    for lab in sorted(g.incident(u)):
        t, h = g.endpoints(lab)
        other = h if t == u else t
        if other == u or other in exclude:
            continue
        if g.multiplicity(u, other) != 1:
            continue
        star = _plain_three_valent(g, other)
        if star is None:
            continue
        legs = tuple(x for x in star if x != lab)
        if len(legs) != 2:
            continue
        return lab, other, legs
    return None


def find_structures(g: Multigraph) -> StructureReport:
    rep = StructureReport()
    stars: dict[int, tuple[int, ...]] = {}
    for v in range(g.vertex_count):
        star = _plain_three_valent(g, v)
        if star is not None:
            stars[v] = star
            rep.three_valent.append((v, star))

    def abc_for(plotted_vertices: set[int]) -> tuple[int, tuple[int, int, int]] | None:
        for t, star in sorted(stars.items()):
            if t in plotted_vertices:
                continue
            ok = True
            for lab in star:
                a, b = g.endpoints(lab)
                if a in plotted_vertices or b in plotted_vertices:
                    ok = False
                    break
            if ok:
                return t, star
        return None

    for u, w in combinations(sorted(stars), 2):
        su, sw = stars[u], stars[w]
        if set(su) & set(sw):
            continue  # adjacent (or shared edge): no disjoint pair
        uext = _leg_extension(g, u, {w})
        wext = _leg_extension(g, w, {u})
        # the extension vertex must not collide with the other side
        if uext and (uext[1] == w or set(uext[2]) & set(sw)):
            uext = None
        if wext and (wext[1] == u or set(wext[2]) & set(su)):
            wext = None
        if uext and wext and (uext[1] == wext[1] or set(uext[2]) & set(wext[2])):
            wext = None
        labels = {}
        verts = {"u": u, "w": w}
        if uext and wext:
            case = "hourglass"
            e1, up, legs_u = uext
            ea, wp, legs_w = wext
            labels["1"] = e1
            labels["2"], labels["3"] = [x for x in su if x != e1]
            labels["4"], labels["5"] = legs_u
            labels["a"] = ea
            labels["b"], labels["c"] = [x for x in sw if x != ea]
            labels["d"], labels["e"] = legs_w
            verts["u'"] = up
            verts["w'"] = wp
        elif uext or wext:
            case = "triangle"
            if uext:
                e1, up, legs = uext
                tri_star, gen_star = su, sw
                verts["u'"] = up
            else:
                # put the extended side in the 1..5 roles
                e1, up, legs = wext
                tri_star, gen_star = sw, su
                verts["u"], verts["w"] = w, u
                verts["u'"] = up
            labels["1"] = e1
            labels["2"], labels["3"] = [x for x in tri_star if x != e1]
            labels["4"], labels["5"] = legs
            labels["a"], labels["b"], labels["c"] = gen_star
        else:
            case = "generic"
            labels["1"], labels["2"], labels["3"] = su
            labels["a"], labels["b"], labels["c"] = sw
        plotted = set(verts.values())
        rec = Fig1Structure(case, labels, verts, abc_for(plotted))
        rep.fig1.append(rec)

    # Figure-2 arrangements
    for t, st in sorted(stars.items()):
        targets = {}
        ok = True
        for lab in st:
            a, b = g.endpoints(lab)
            other = b if a == t else a
            if other == t or other in targets.values():
                ok = False
                break
            targets[lab] = other
        if not ok:
            continue
        for A in st:
            m = targets[A]
            if g.degree(m) != 4 or len(g.incident(m)) != 4:
                continue
            m_edges = [x for x in g.incident(m) if x != A]
            for e3 in m_edges:
                a3, b3 = g.endpoints(e3)
                u3 = b3 if a3 == m else a3
                if u3 in (t, m) or u3 not in stars:
                    continue
                su3 = stars[u3]
                if e3 not in su3:
                    continue
                rest_u3 = [x for x in su3 if x != e3]
                # u3's other edges must go to x1, x2 = t's other targets
                xs = {}
                good = True
                for lab in rest_u3:
                    a1, b1 = g.endpoints(lab)
                    other = b1 if a1 == u3 else a1
                    xs[lab] = other
                if set(xs.values()) != {targets[x] for x in st if x != A}:
                    continue
                for ea in m_edges:
                    if ea == e3:
                        continue
                    aa, bb = g.endpoints(ea)
                    w3 = bb if aa == m else aa
                    if w3 in (t, m, u3) or w3 not in stars:
                        continue
                    sw3 = stars[w3]
                    if ea not in sw3:
                        continue
                    e4 = [x for x in m_edges if x not in (e3, ea)]
                    if len(e4) != 1:
                        continue
                    bc = [x for x in sw3 if x != ea]
                    # assign 1/2, B/C consistently: B = t-x2, C = t-x1,
                    # 1 = u3-x1, 2 = u3-x2
                    inv_t = {targets[x]: x for x in st if x != A}
                    inv_u = {xs[x]: x for x in xs}
                    x1, x2 = sorted(inv_t)
                    # variant: some bc edge joins w3 to x2 or x1
                    variant = "eight"
                    cedge = None
                    for lab in bc:
                        a1, b1 = g.endpoints(lab)
                        other = b1 if a1 == w3 else a1
                        if other in (x1, x2):
                            variant = "twelve"
                            cedge = lab
                            if other == x1:
                                x1, x2 = x2, x1
                            break
                    labels = {
                        "A": A, "B": inv_t[x2], "C": inv_t[x1],
                        "3": e3, "1": inv_u[x1], "2": inv_u[x2],
                        "a": ea, "4": e4[0],
                    }
                    if cedge is not None:
                        labels["c"] = cedge
                        labels["b"] = [x for x in bc if x != cedge][0]
                    else:
                        labels["b"], labels["c"] = sorted(bc)
                    verts = {"t": t, "m": m, "u3": u3, "w3": w3,
                             "x1": x1, "x2": x2}
                    rep.fig2.append(Fig2Structure(variant, labels, verts))
    return rep
