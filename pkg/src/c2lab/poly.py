"""Sparse multivariate polynomials over the integers.

Coefficients are exact Python ints.  Every object produced by the pipeline
has degree <= 4 in each variable, so public multiplication enforces that cap
as a hard invariant (a violation indicates a pipeline bug, never data to
truncate).  Internal routines (exact division, pseudo-remainder sequences)
use uncapped arithmetic: their *outputs* divide capped inputs and therefore
respect the cap, but intermediates may not.

Variables are arbitrary sortable hashables; the pipeline uses positive ints
(edge labels) plus 0 for the auxiliary variable, while pair files may use
alphabetic names.  A monomial is a tuple of (variable, exponent) pairs
sorted by variable.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

DEGREE_CAP = 4

Monomial = tuple  # ((var, exp), ...) sorted by variable key


class DegreeOverflowError(ValueError):
    """A product exceeded the per-variable degree cap."""


def _vkey(v):
    # ints sort before strings; within a type, natural order
    return (isinstance(v, str), v)


def _mono_mul(m1: Monomial, m2: Monomial, cap: int | None) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        k1, k2 = _vkey(v1), _vkey(v2)
        if k1 == k2:
            e = e1 + e2
            if cap is not None and e > cap:
                raise DegreeOverflowError(f"degree {e} > {cap} in variable {v1!r}")
            out.append((v1, e))
            i += 1
            j += 1
        elif k1 < k2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_div(m1: Monomial, m2: Monomial) -> Monomial | None:
    """m1 / m2, or None when m2 does not divide m1."""
    if not m2:
        return m1
    d2 = dict(m2)
    out = []
    for v, e in m1:
        e2 = d2.pop(v, 0)
        if e2 > e:
            return None
        if e > e2:
            out.append((v, e - e2))
    if d2:
        return None
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    """Immutable sparse polynomial with exact integer coefficients."""

    __slots__ = ("_t",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        # internal: caller guarantees no zero coefficients, sorted monomials
        self._t = terms or {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls({})

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(): int(c)} if c else {})

    @classmethod
    def var(cls, v) -> "Poly":
        return cls({((v, 1),): 1})

    @classmethod
    def term(cls, c: int, exps: dict) -> "Poly":
        if not c:
            return cls.zero()
        mono = []
        for v in sorted(exps, key=_vkey):
            e = exps[v]
            if e < 0 or e > DEGREE_CAP:
                raise DegreeOverflowError(f"exponent {e} for {v!r}")
            if e:
                mono.append((v, int(e)))
        return cls({tuple(mono): int(c)})

    # -- basic structure ----------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return self._t

    def term_count(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_const(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    def const_value(self) -> int:
        if not self._t:
            return 0
        if self.is_const():
            return self._t[()]
        raise ValueError("not a constant polynomial")

    def variables(self) -> list:
        vs = set()
        for m in self._t:
            for v, _ in m:
                vs.add(v)
        return sorted(vs, key=_vkey)

    def degree(self) -> int:
        """Total degree (0 for the zero polynomial)."""
        if not self._t:
            return 0
        return max(_mono_degree(m) for m in self._t)

    def degree_in(self, v) -> int:
        d = 0
        for m in self._t:
            for mv, e in m:
                if mv == v and e > d:
                    d = e
        return d

    def is_homogeneous(self) -> bool:
        degs = {_mono_degree(m) for m in self._t}
        return len(degs) <= 1

    def content(self) -> int:
        """Gcd of the absolute coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._t.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    # -- arithmetic ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __bool__(self) -> bool:
        return bool(self._t)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._t.items()})

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if len(other._t) > len(self._t):
            self, other = other, self
        out = dict(self._t)
        for m, c in other._t.items():
            n = out.get(m, 0) + c
            if n:
                out[m] = n
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        return self._mul(_coerce(other), DEGREE_CAP)

    __rmul__ = __mul__

    def _mul(self, other: "Poly", cap: int | None) -> "Poly":
        if not self._t or not other._t:
            return Poly.zero()
        if len(self._t) > len(other._t):
            self, other = other, self
        out: dict[Monomial, int] = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = _mono_mul(m1, m2, cap)
                n = out.get(m, 0) + c1 * c2
                if n:
                    out[m] = n
                else:
                    out.pop(m, None)
        return Poly(out)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        for _ in range(e):
            out = out * self
        return out

    # -- coefficient access ---------------------------------------------

    def coeffs_in(self, v) -> list["Poly"]:
        """Coefficients [c0..c_cap] of self viewed as a polynomial in v."""
        out: list[dict[Monomial, int]] = [{} for _ in range(DEGREE_CAP + 1)]
        for m, c in self._t.items():
            e = 0
            rest = []
            for mv, me in m:
                if mv == v:
                    e = me
                else:
                    rest.append((mv, me))
            if e > DEGREE_CAP:
                raise DegreeOverflowError(f"degree {e} in {v!r}")
            out[e][tuple(rest)] = c
        return [Poly(d) for d in out]

    @classmethod
    def from_coeffs(cls, v, coeffs: Iterable["Poly"]) -> "Poly":
        out: dict[Monomial, int] = {}
        for e, p in enumerate(coeffs):
            for m, c in p._t.items():
                mono = _mono_mul(m, ((v, e),) if e else (), None)
                n = out.get(mono, 0) + c
                if n:
                    out[mono] = n
                else:
                    out.pop(mono, None)
        return cls(out)

    def rename(self, mapping: dict) -> "Poly":
        """Rename variables; mapping must be injective on present variables."""
        out: dict[Monomial, int] = {}
        for m, c in self._t.items():
            mono = tuple(sorted(((mapping.get(v, v), e) for v, e in m),
                                key=lambda p: _vkey(p[0])))
            if mono in out:
                raise ValueError("rename not injective")
            out[mono] = c
        return Poly(out)

    # -- substitution / evaluation ---------------------------------------

    def subs_int(self, v, value: int) -> "Poly":
        out: dict[Monomial, int] = {}
        for m, c in self._t.items():
            e = 0
            rest = []
            for mv, me in m:
                if mv == v:
                    e = me
                else:
                    rest.append((mv, me))
            c2 = c * value ** e
            if not c2:
                continue
            mono = tuple(rest)
            n = out.get(mono, 0) + c2
            if n:
                out[mono] = n
            else:
                out.pop(mono, None)
        return Poly(out)

    def reduce_mod(self, p: int) -> "Poly":
        out = {}
        for m, c in self._t.items():
            c %= p
            if c:
                out[m] = c
        return Poly(out)

    def eval_mod(self, assignment: dict, p: int) -> int:
        total = 0
        for m, c in self._t.items():
            t = c % p
            for v, e in m:
                t = t * pow(assignment[v] % p, e, p) % p
            total = (total + t) % p
        return total

    def derivative(self, v) -> "Poly":
        out: dict[Monomial, int] = {}
        for m, c in self._t.items():
            rest = []
            e = 0
            for mv, me in m:
                if mv == v:
                    e = me
                else:
                    rest.append((mv, me))
            if not e:
                continue
            mono = tuple(sorted(rest + ([(v, e - 1)] if e > 1 else []),
                                key=lambda pr: _vkey(pr[0])))
            out[mono] = c * e
        return Poly(out)

    # -- division / roots --------------------------------------------------

    def exact_div(self, d: "Poly") -> "Poly | None":
        """Exact quotient self / d, or None when division is not exact."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return Poly.zero()
        if d.is_const():
            dc = d.const_value()
            out = {}
            for m, c in self._t.items():
                if c % dc:
                    return None
                out[m] = c // dc
            return Poly(out)
        universe = sorted({v for v in self.variables()} | set(d.variables()),
                          key=_vkey)
        index = {v: i for i, v in enumerate(universe)}

        def key(m: Monomial):
            vec = [0] * len(universe)
            for v, e in m:
                vec[index[v]] = e
            return (_mono_degree(m), tuple(vec))

        dlead = max(d._t, key=key)
        dcoef = d._t[dlead]
        rem = dict(self._t)
        quo: dict[Monomial, int] = {}
        while rem:
            m = max(rem, key=key)
            c = rem[m]
            qm = _mono_div(m, dlead)
            if qm is None or c % dcoef:
                return None
            qc = c // dcoef
            quo[qm] = quo.get(qm, 0) + qc
            for dm, dc in d._t.items():
                nm = _mono_mul(qm, dm, None)
                n = rem.get(nm, 0) - qc * dc
                if n:
                    rem[nm] = n
                else:
                    rem.pop(nm, None)
        return Poly({m: c for m, c in quo.items() if c})

    def sqrt(self) -> "Poly | None":
        """Exact square root with positive leading coefficient, or None."""
        if self.is_zero():
            return Poly.zero()
        if self.is_const():
            c = self.const_value()
            if c < 0:
                return None
            r = math.isqrt(c)
            return Poly.const(r) if r * r == c else None
        v = self.variables()[-1]
        d = self.degree_in(v)
        if d % 2:
            return None
        cs = self.coeffs_in(v)
        t = d // 2
        top = cs[d].sqrt()
        if top is None:
            return None
        root = [Poly.zero()] * (t + 1)
        root[t] = top
        two_top = Poly.const(2)._mul(top, None)
        for j in range(t - 1, -1, -1):
            s = cs[t + j]
            for i in range(j + 1, t + 1):
                k = t + j - i
                if k <= j or k > t:
                    continue
                if k < i:
                    s = s - Poly.const(2)._mul(root[i]._mul(root[k], None), None)
                elif k == i:
                    s = s - root[i]._mul(root[i], None)
            q = s.exact_div(two_top)
            if q is None:
                return None
            root[j] = q
        cand = Poly.from_coeffs(v, root)
        for m in cand._t:
            for _, e in m:
                if 2 * e > DEGREE_CAP:
                    return None
        if cand._mul(cand, None) == self:
            return cand
        return None

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """One term per line: '<coeff> <var:exp> ...'; graded-lex order."""
        if not self._t:
            return "0"
        universe = self.variables()
        index = {v: i for i, v in enumerate(universe)}

        def key(item):
            m, _ = item
            vec = [0] * len(universe)
            for v, e in m:
                vec[index[v]] = e
            return (_mono_degree(m), tuple(vec))

        lines = []
        for m, c in sorted(self._t.items(), key=key, reverse=True):
            parts = [str(c)] + [f"{v}:{e}" for v, e in m]
            lines.append(" ".join(parts))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "Poly":
        out = cls.zero()
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            c = int(toks[0])
            exps: dict = {}
            for tok in toks[1:]:
                name, _, e = tok.partition(":")
                v = int(name) if name.lstrip("-").isdigit() else name
                exps[v] = exps.get(v, 0) + (int(e) if e else 1)
            out = out + cls.term(c, exps)
        return out

    def __repr__(self) -> str:
        if not self._t:
            return "Poly(0)"
        return f"Poly({len(self._t)} terms, deg {self.degree()})"


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return Poly.const(x)
    return NotImplemented


# -- gcd machinery -----------------------------------------------------------


def _normalize(p: Poly) -> Poly:
    """Divide out the integer content and make the grlex-leading coeff > 0."""
    if p.is_zero():
        return p
    c = p.content()
    q = p.exact_div(Poly.const(c))
    universe = q.variables()
    index = {v: i for i, v in enumerate(universe)}

    def key(m):
        vec = [0] * len(universe)
        for v, e in m:
            vec[index[v]] = e
        return (_mono_degree(m), tuple(vec))

    lead = max(q._t, key=key)
    if q._t[lead] < 0:
        q = -q
    return q


def _prem(a: Poly, b: Poly, v) -> Poly:
    """Pseudo-remainder of a by b with respect to v (uncapped arithmetic)."""
    db = b.degree_in(v)
    if db == 0:
        return Poly.zero()
    lb = b.coeffs_in(v)[db]
    r = a
    while not r.is_zero():
        dr = r.degree_in(v)
        if dr < db:
            break
        lr = r.coeffs_in(v)[dr]
        shift = Poly.term(1, {v: dr - db}) if dr > db else Poly.const(1)
        r = r._mul(lb, None) - b._mul(lr._mul(shift, None), None)
    return r


def _content_in(p: Poly, v) -> Poly:
    cs = [c for c in p.coeffs_in(v) if not c.is_zero()]
    g = cs[0]
    for c in cs[1:]:
        g = poly_gcd(g, c)
        if g.is_const() and g.const_value() == 1:
            break
    return g


def _primitive_in(p: Poly, v) -> Poly:
    if p.is_zero():
        return p
    q = p.exact_div(_content_in(p, v))
    assert q is not None
    return q


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive, sign-normalized gcd over Z[vars] via subresultant-style PRS."""
    if a.is_zero():
        return _normalize(b)
    if b.is_zero():
        return _normalize(a)
    if a.is_const() or b.is_const():
        return Poly.const(math.gcd(a.content(), b.content()))
    va, vb = set(a.variables()), set(b.variables())
    v = max(va | vb, key=_vkey)
    if v not in va:
        return poly_gcd(a, _content_in(b, v))
    if v not in vb:
        return poly_gcd(_content_in(a, v), b)
    cg = poly_gcd(_content_in(a, v), _content_in(b, v))
    pa = _primitive_in(a, v)
    pb = _primitive_in(b, v)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _prem(pa, pb, v)
        if not r.is_zero():
            r = _primitive_in(r, v)
        pa, pb = pb, r
    return _normalize(cg._mul(_primitive_in(pa, v), None))


def sq_gcd(p: Poly, v) -> Poly:
    """Primitive gcd of p and dp/dv: exposes repeated factors involving v."""
    d = p.derivative(v)
    if d.is_zero():
        return Poly.const(1)
    return poly_gcd(p, d)


def linear_square_factors(p: Poly, v) -> list[Poly]:
    """Candidate primitive L, linear in v, with L^2 possibly dividing p."""
    g = sq_gcd(p, v)
    cands = []
    seen = set()

    def push(c: Poly):
        c = _primitive_in(c, v)
        key = frozenset(c._t.items())
        if key not in seen:
            seen.add(key)
            cands.append(c)

    guard = 0
    while g.degree_in(v) >= 1 and guard < 6:
        guard += 1
        if g.degree_in(v) == 1:
            push(g)
            break
        r = g.sqrt()
        if r is not None and r.degree_in(v) == 1:
            push(r)
        nxt = sq_gcd(g, v)
        if nxt.degree_in(v) == 0 or nxt == g:
            break
        g = nxt
    return cands
