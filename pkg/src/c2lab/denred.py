"""Quadratic denominator reduction.

A reduction state carries the squared invariant after eliminating the first n
edge variables.  The initial state (n = 3) for an edge triple (e1, e2, e3) is

    [ psi^{e1e3,e2e3} * psi^{e1,e2}_{e3} ]^2 .

One step eliminates a variable v:

  * case 1 ('square'): the invariant is a perfect square (A v^2 + B v + C)^2
    -> B^2 - 4AC;
  * case 2 ('repeated_factor'): it factors as (A v^2 + B v + C)(D v + E)^2
    with D v + E the repeated factor found by a square-free gcd and verified
    by exact division -> A E^2 - B D E + C D^2.  D = 0 is allowed: whenever
    the invariant has degree <= 2 in v the result is its v^2 coefficient.

Graphical initializations jump directly to n = 6/8/10 (from a pair of
3-valent vertices, optionally extended by 3-valent neighbors), to
n = 9/11/13 (the same structures combined with a third 3-valent vertex), or
to n = 10 (the square-rich arrangement), using products of Dodgson
polynomials of the shrunken graphs instead of stepwise elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dodgson import psi, three_valent_data
from .multigraph import (Fig1Structure, Fig2Structure, GraphSum, Multigraph,
                         delete_vertices, find_structures, labeled_minor)
from .poly import Poly


@dataclass(frozen=True)
class StepRecord:
    variable: int
    case: str  # 'square' | 'repeated_factor' | 'graphical'
    degree: int  # degree of the invariant in the variable before the step


@dataclass(frozen=True)
class ReductionState:
    graph: Multigraph
    invariant: Poly
    n: int
    used: tuple[int, ...]
    remaining: tuple[int, ...]
    history: tuple[StepRecord, ...]
    status: str  # 'active' | 'terminated' | 'weight_drop' | 'exhausted'
    root: Poly | None = None  # cached square root of the invariant, if known


def _status_for(invariant: Poly, remaining: tuple[int, ...]) -> str:
    if invariant.is_zero():
        return "weight_drop"
    if not remaining:
        return "exhausted"
    return "active"


def _mk_state(graph, invariant, used, history, root=None) -> ReductionState:
    used = tuple(used)
    remaining = tuple(lab for lab in graph.labels() if lab not in set(used))
    return ReductionState(graph, invariant, len(used), used, remaining,
                          tuple(history), _status_for(invariant, remaining),
                          root)


def default_triple(g: Multigraph) -> tuple[int, int, int]:
    """Edges of the lowest 3-valent vertex, else the first three labels."""
    for v in range(g.vertex_count):
        inc = g.incident(v)
        if len(inc) == 3 and g.degree(v) == 3:
            return tuple(sorted(inc))
    return (1, 2, 3)


def init3(g: Multigraph, triple: tuple[int, int, int] | None = None) -> ReductionState:
    """Initial state after eliminating three edge variables."""
    if g.edge_count < 3:
        raise ValueError("need at least three edges")
    e1, e2, e3 = triple if triple is not None else default_triple(g)
    if len({e1, e2, e3}) != 3:
        raise ValueError("edge triple must be distinct")
    root = psi(g, (e1, e3), (e2, e3)) * psi(g, (e1,), (e2,), (e3,))
    return _mk_state(g, root * root, (e1, e2, e3), (), root=root)


def qdr_step(state: ReductionState, v: int) -> ReductionState | None:
    """Eliminate variable v; None when no reduction structure exists."""
    if state.status != "active":
        raise ValueError(f"cannot step a state with status {state.status!r}")
    if v not in state.remaining:
        raise ValueError(f"variable {v} is not remaining")
    S = state.invariant
    d = S.degree_in(v)
    case = None
    if d <= 2:
        # (A v^2 + B v + C) * (0*v + 1)^2  ->  A
        new = S.coeffs_in(v)[2]
        case = "repeated_factor"
    else:
        root = state.root if state.root is not None else S.sqrt()
        if root is not None:
            rc = root.coeffs_in(v)
            A, B, C = rc[2], rc[1], rc[0]
            new = B * B - 4 * A * C
            case = "square"
        else:
            from .poly import linear_square_factors

            new = None
            for L in linear_square_factors(S, v):
                quad = S.exact_div(L * L)
                if quad is None or quad.degree_in(v) > 2:
                    continue
                qc = quad.coeffs_in(v)
                A, B, C = qc[2], qc[1], qc[0]
                lc = L.coeffs_in(v)
                D, E = lc[1], lc[0]
                new = A * E * E - B * D * E + C * D * D
                case = "repeated_factor"
                break
            if new is None:
                return None
    used = state.used + (v,)
    hist = state.history + (StepRecord(v, case, d),)
    return _mk_state(state.graph, new, used, hist)


# -- graphical initializations ---------------------------------------------------


def _kallen(a: Poly, b: Poly, c: Poly) -> Poly:
    d = a - b - c
    return d * d - 4 * b * c


def _rename_back(p: Poly, label_map: dict[int, int]) -> Poly:
    inv = {new: old for old, new in label_map.items()}
    return p.rename(inv)


def _psi_of_sum(terms, I=(), J=(), K=()) -> Poly:
    """Dodgson of a list of (coeff, graph, label_map) with original labels."""
    out = Poly.zero()
    for coeff, graph, lmap in terms:
        if graph is None:
            continue
        res = psi(graph, tuple(lmap[x] for x in I), tuple(lmap[x] for x in J),
                  tuple(lmap[x] for x in K))
        out = out + coeff * _rename_back(res, lmap)
    return out


def _shrunken(g: Multigraph, case: str, L: dict[str, int]):
    """The graph sum H used by the graphical initializations (edges in
    original labels via per-term label maps)."""
    if case == "generic":
        specs = [(1, (), (L["1"], L["a"]))]
    elif case == "triangle":
        specs = [(1, (L["4"],), (L["1"], L["5"], L["a"])),
                 (-1, (L["5"],), (L["1"], L["4"], L["a"]))]
    else:  # hourglass
        specs = [(1, (L["4"], L["d"]), (L["1"], L["5"], L["a"], L["e"])),
                 (-1, (L["5"], L["d"]), (L["1"], L["4"], L["a"], L["e"])),
                 (-1, (L["4"], L["e"]), (L["1"], L["5"], L["a"], L["d"])),
                 (1, (L["5"], L["e"]), (L["1"], L["4"], L["a"], L["d"]))]
    out = []
    for coeff, dele, cont in specs:
        res = labeled_minor(g, dele, cont)
        if res is None:
            out.append((coeff, None, {}))
        else:
            out.append((coeff, res[0], res[1]))
    return out


def _core_graph(g: Multigraph, rec: Fig1Structure):
    """G0: the graph without the plotted vertices and edges."""
    return delete_vertices(g, rec.vertices.values())


def _used_order(rec: Fig1Structure) -> tuple[int, ...]:
    L = rec.labels
    order = [L["2"], L["b"], L["3"], L["c"], L["1"], L["a"]]
    if rec.case in ("triangle", "hourglass"):
        order += [L["4"], L["5"]]
    if rec.case == "hourglass":
        order += [L["d"], L["e"]]
    return tuple(order)


def init_fig1(g: Multigraph, rec: Fig1Structure, quadratic: bool = False
              ) -> ReductionState:
    """Initial state at n = 6/8/10 (quadratic=False) or 9/11/13 (True)."""
    L = rec.labels
    if quadratic:
        if rec.abc is None:
            raise ValueError("no third 3-valent vertex available")
        t, (A, B, C) = rec.abc
        g = g.reorient({A: t, B: t, C: t})
    core, core_map = _core_graph(g, rec)
    psi_core = _rename_back(psi(core), core_map)
    H = _shrunken(g, rec.case, L)
    e2, e3, eb, ec = L["2"], L["3"], L["b"], L["c"]
    used = _used_order(rec)
    if not quadratic:
        root = psi_core * _psi_of_sum(H, (e2, e3), (eb, ec))
        hist = [StepRecord(x, "graphical", 0) for x in used[3:]]
        return _mk_state(g, root * root, used, hist, root=root)
    # third-vertex variant
    f0 = _rename_back(psi(core, _core_words(core_map, (A, B)),
                          _core_words(core_map, (A, B)),
                          _core_words(core_map, (C,))), core_map)
    fA = _rename_back(psi(core, _core_words(core_map, (B,)),
                          _core_words(core_map, (C,)),
                          _core_words(core_map, (A,))), core_map)
    fB = _rename_back(psi(core, _core_words(core_map, (A,)),
                          _core_words(core_map, (C,)),
                          _core_words(core_map, (B,))), core_map)
    fC = _rename_back(psi(core, _core_words(core_map, (A,)),
                          _core_words(core_map, (B,)),
                          _core_words(core_map, (C,))), core_map)
    fABC = _rename_back(psi(core, (), (), _core_words(core_map, (A, B, C))),
                        core_map)
    g0 = _psi_of_sum(H, (e2, e3, A, B), (eb, ec, A, B), (C,))
    gA = _psi_of_sum(H, (e2, e3, A), (eb, ec, A), (B, C))
    gB = _psi_of_sum(H, (e2, e3, B), (eb, ec, B), (A, C))
    gC = _psi_of_sum(H, (e2, e3, C), (eb, ec, C), (A, B))
    inv = f0 * (f0 * _kallen(gA, gB, gC)
                - 4 * g0 * (fA * gA + fB * gB + fC * gC + fABC * g0))
    used = used + (A, B, C)
    hist = [StepRecord(x, "graphical", 0) for x in used[3:]]
    return _mk_state(g, inv, used, hist)


def _core_words(core_map: dict[int, int], labels) -> tuple[int, ...]:
    return tuple(core_map[x] for x in labels)


def init_fig2(g: Multigraph, rec: Fig2Structure) -> ReductionState:
    """Initial state at n = 10 for the square-rich arrangement."""
    L = rec.labels
    t = rec.vertices["t"]
    g = g.reorient({L["A"]: t, L["B"]: t, L["C"]: t})
    e1, e2, e3, e4 = L["1"], L["2"], L["3"], L["4"]
    ea, eb, ec = L["a"], L["b"], L["c"]
    A, B, C = L["A"], L["B"], L["C"]
    core, cmap = delete_vertices(g, [rec.vertices["u3"], rec.vertices["w3"]])

    def psi_core(dele, cont):
        res = labeled_minor(core, _core_words(cmap, dele), _core_words(cmap, cont))
        if res is None:
            return Poly.zero()
        sub, smap = res
        return _rename_back(_rename_back(psi(sub), smap), cmap)

    H = _shrunken(g, "generic", L)  # G/1a

    def psi_h(extra_delete=(), extra_contract=()):
        out = Poly.zero()
        for coeff, graph, lmap in H:
            if graph is None:
                continue
            hv = {v for lab in (A, B, C) for v in graph.endpoints(lmap[lab])}
            # H0 = H without the third vertex: drop t's image and its edges
            t_img = None
            for vv in hv:
                if all(vv in graph.endpoints(lmap[lab]) for lab in (A, B, C)):
                    t_img = vv
            sub, smap = delete_vertices(graph, [t_img])
            res = labeled_minor(sub,
                                tuple(smap[lmap[x]] for x in extra_delete),
                                tuple(smap[lmap[x]] for x in extra_contract))
            if res is None:
                continue
            sub2, smap2 = res
            val = psi(sub2, tuple(smap2[smap[lmap[x]]] for x in (e2, e3)),
                      tuple(smap2[smap[lmap[x]]] for x in (eb, ec)))
            val = _rename_back(val, smap2)
            val = _rename_back(val, smap)
            val = _rename_back(val, lmap)
            out = out + coeff * val
        return out

    front = 4 * psi_core((A, B), (e4, C)) * psi_h(extra_delete=(e4,))
    bracket = (psi_core((e4,), (A, B, C)) * psi_h(extra_contract=(e4,))
               - psi_core((), (e4, A, B, C)) * psi_h(extra_delete=(e4,)))
    inv = front * bracket
    used = (e2, eb, e3, ec, e1, ea, A, B, C, e4)
    hist = [StepRecord(x, "graphical", 0) for x in used[3:]]
    return _mk_state(g, inv, used, hist)


def best_structure(g: Multigraph):
    """Pick the structure giving the deepest graphical start, or None."""
    rep = find_structures(g)
    best = None  # (n, kind, record)
    for rec in rep.fig1:
        n = rec.order
        if rec.abc is not None:
            cand = (n + 3, "fig1q", rec)
        else:
            cand = (n, "fig1", rec)
        if best is None or cand[0] > best[0]:
            best = cand
    for rec in rep.fig2:
        cand = (10, "fig2", rec)
        if best is None or cand[0] > best[0]:
            best = cand
    return best


def graphical_init(g: Multigraph) -> ReductionState | None:
    """Initialize from the best available Figure-type structure, if any."""
    best = best_structure(g)
    if best is None:
        return None
    _, kind, rec = best
    if kind == "fig2":
        return init_fig2(g, rec)
    return init_fig1(g, rec, quadratic=(kind == "fig1q"))


# -- driving -----------------------------------------------------------------------


def run(g: Multigraph, strategy: str = "greedy",
        order: tuple[int, ...] | None = None,
        use_structures: bool = True) -> ReductionState:
    """Reduce as far as possible.

    strategy 'greedy' minimizes the term count of the next invariant with a
    one-step lookahead; 'file-order' takes the lowest remaining label;
    'user' follows `order`.
    """
    state = graphical_init(g) if use_structures else None
    if state is None:
        state = init3(g)
    pending = list(order or ())
    while state.status == "active":
        nxt = None
        if strategy == "greedy":
            best = None
            for v in state.remaining:
                trial = qdr_step(state, v)
                if trial is None:
                    continue
                cost = (trial.invariant.term_count(), v)
                if best is None or cost < best[0]:
                    best = (cost, trial)
            nxt = best[1] if best else None
        elif strategy == "file-order":
            for v in state.remaining:
                nxt = qdr_step(state, v)
                if nxt is not None:
                    break
        elif strategy == "user":
            while pending:
                v = pending.pop(0)
                if v in state.remaining:
                    nxt = qdr_step(state, v)
                    break
            else:
                nxt = None
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        if nxt is None:
            return replace(state, status="terminated")
        state = nxt
    return state
