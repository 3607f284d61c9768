"""Gröbner bases (Buchberger) and local standard bases (Mora).

Internally polynomials are dicts ``{exponent: int}`` kept primitive; the
public functions take and return :class:`~multigerm.poly.Polynomial`.

Global orders use Buchberger's algorithm with the Gebauer-Möller pair
criteria and the normal selection strategy, after a Gauss-Jordan pass over
the input generators.  Local standard bases come from
Mora's tangent cone algorithm by default, or from Lazard's homogenization.
Reduction against a local basis always uses Mora's weak normal form (ecart
bookkeeping), which decides membership in the localization at the origin.
Once the leading ideal has finite colength, terms above its highest corner
are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from operator import add

from .orders import MonomialOrder
from .poly import Polynomial, RingMismatch, VariableRing


class _Entry:
    __slots__ = ("terms", "lm", "lc", "deg", "ecart")

    def __init__(self, terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.deg = max(sum(e) for e in terms)
        self.ecart = self.deg - sum(self.lm)


def _to_int_terms(p: Polynomial) -> dict:
    return _to_int_terms_raw(p.terms)


def _primitive(terms: dict) -> dict:
    g = gcd(*terms.values()) if terms else 0
    if g > 1:
        return {e: c // g for e, c in terms.items()}
    return terms


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _sub_multiple(h: dict, hc: int, g: _Entry, m: tuple) -> tuple[dict, int, int]:
    """Return (a*h - b*x^m*g, a, b) cancelling the term of h with coefficient hc."""
    d = gcd(g.lc, hc)
    a = g.lc // d
    b = hc // d
    if a < 0:
        a, b = -a, -b
    if a != 1:
        h = {e: c * a for e, c in h.items()}
    else:
        h = dict(h)
    for e, c in g.terms.items():
        ee = tuple(map(add, e, m)) if any(m) else e
        v = h.get(ee, 0) - b * c
        if v:
            h[ee] = v
        else:
            h.pop(ee, None)
    return h, a, b


def _reduce_global(f: dict, basis: list[_Entry], key, full=True):
    """Division of ``f`` by ``basis``; returns (remainder, scale) with
    ``scale * f == remainder (mod basis)``."""
    h = dict(f)
    r: dict = {}
    scale = Fraction(1)
    while h:
        lm = max(h, key=key)
        hc = h[lm]
        for g in basis:
            if _divides(g.lm, lm):
                m = tuple(x - y for x, y in zip(lm, g.lm))
                h, a, _ = _sub_multiple(h, hc, g, m)
                if a != 1:
                    r = {e: c * a for e, c in r.items()}
                    scale *= a
                cont = gcd(*h.values(), *r.values()) if (h or r) else 1
                if cont > 1:
                    h = {e: c // cont for e, c in h.items()}
                    r = {e: c // cont for e, c in r.items()}
                    scale /= cont
                break
        else:
            if not full:
                r.update(h)
                break
            r[lm] = hc
            del h[lm]
    return r, scale


def _truncate(h: dict, corner) -> dict:
    if corner is None:
        return h
    return {e: c for e, c in h.items() if sum(e) <= corner}


def _corner(lms: list[tuple], nvars: int):
    """Degree D with every monomial of degree D in <lms>, or None.

    For a local degree order this puts m^D inside the ideal at the origin
    (Nakayama), so terms of degree > D can be dropped.
    """
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in lms if m[i] and not any(k for j, k in enumerate(m) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    top = -1
    stack = [(0,) * nvars]
    seen = set(stack)
    while stack:
        e = stack.pop()
        if any(_divides(m, e) for m in lms):
            continue
        top = max(top, sum(e))
        for i in range(nvars):
            if e[i] + 1 < bounds[i]:
                f = e[:i] + (e[i] + 1,) + e[i + 1 :]
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
    return top + 1


def _reduce_mora(f: dict, basis: list[_Entry], key, corner=None):
    """Mora's weak normal form: returns h with u*f == h (mod basis), u a unit."""
    h = _truncate(f, corner)
    T = list(basis)
    while h:
        lm = max(h, key=key)
        cands = [g for g in T if _divides(g.lm, lm)]
        if not cands:
            break
        g = min(cands, key=lambda e: e.ecart)
        ecart_h = max(sum(e) for e in h) - sum(lm)
        if g.ecart > ecart_h:
            T.append(_Entry(h, key))
        m = tuple(x - y for x, y in zip(lm, g.lm))
        h, _, _ = _sub_multiple(h, h[lm], g, m)
        h = _primitive(_truncate(h, corner))
    return h


def _spoly(f: _Entry, g: _Entry) -> dict:
    L = _lcm(f.lm, g.lm)
    mf = tuple(x - y for x, y in zip(L, f.lm))
    mg = tuple(x - y for x, y in zip(L, g.lm))
    d = gcd(f.lc, g.lc)
    a = g.lc // d
    b = f.lc // d
    h: dict = {}
    for e, c in f.terms.items():
        h[tuple(map(add, e, mf))] = a * c
    for e, c in g.terms.items():
        ee = tuple(map(add, e, mg))
        v = h.get(ee, 0) - b * c
        if v:
            h[ee] = v
        else:
            h.pop(ee, None)
    return _primitive(h)


def _update(P, G, B, h):
    """Gebauer-Möller installation of P[h] into basis indices G and pairs B."""
    lmh = P[h].lm
    lcm_h = {g: _lcm(lmh, P[g].lm) for g in G}
    C = list(G)
    D = []
    while C:
        g1 = C.pop(0)
        L1 = lcm_h[g1]
        if _coprime(lmh, P[g1].lm) or (
            not any(_divides(lcm_h[g2], L1) for g2 in C) and not any(_divides(lcm_h[g2], L1) for g2 in D)
        ):
            D.append(g1)
    E = [g for g in D if not _coprime(lmh, P[g].lm)]
    B_new = []
    for g1, g2 in B:
        L12 = _lcm(P[g1].lm, P[g2].lm)
        if _divides(lmh, L12) and _lcm(P[g1].lm, lmh) != L12 and _lcm(lmh, P[g2].lm) != L12:
            continue
        B_new.append((g1, g2))
    B_new.extend((g, h) for g in E)
    G_new = [g for g in G if not _divides(lmh, P[g].lm)]
    G_new.append(h)
    return G_new, B_new


def _pair_key(P, pair, key=sum):
    i, j = pair
    return (key(_lcm(P[i].lm, P[j].lm)), i, j)


def _echelon(polys: list[dict], key) -> list[dict]:
    """Gauss-Jordan on coefficient rows: same span, distinct leading monomials.

    Many generators (e.g. all minors of a matrix) are usually linearly
    dependent; collapsing them first keeps Buchberger's coefficients small.
    """
    piv: dict[tuple, dict] = {}
    for p in polys:
        r = {e: Fraction(c) for e, c in p.items()}
        while r:
            lm = max(r, key=key)
            pr = piv.get(lm)
            if pr is None:
                c = r[lm]
                r = {e: v / c for e, v in r.items()}
                for other in piv.values():
                    f = other.get(lm)
                    if f:
                        for e, v in r.items():
                            w = other.get(e, 0) - f * v
                            if w:
                                other[e] = w
                            else:
                                other.pop(e, None)
                piv[lm] = r
                break
            f = r[lm]
            for e, v in pr.items():
                w = r.get(e, 0) - f * v
                if w:
                    r[e] = w
                else:
                    r.pop(e, None)
    out = []
    for lm in sorted(piv, key=key):
        r = piv[lm]
        d = lcm(*(c.denominator for c in r.values()))
        out.append(_primitive({e: int(c * d) for e, c in r.items()}))
    return out


def _buchberger(polys: list[dict], key) -> list[_Entry]:
    P: list[_Entry] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []
    for f in _echelon(polys, key):
        f, _ = _reduce_global(f, [P[g] for g in G], key)
        if f:
            P.append(_Entry(_primitive(f), key))
            G, B = _update(P, G, B, len(P) - 1)
    while B:
        pair = min(B, key=lambda pr: _pair_key(P, pr, key))
        B.remove(pair)
        s = _spoly(P[pair[0]], P[pair[1]])
        if not s:
            continue
        # full reduction keeps tails (and coefficient growth) in check
        h, _ = _reduce_global(s, [P[g] for g in G], key)
        if h:
            P.append(_Entry(_primitive(h), key))
            G, B = _update(P, G, B, len(P) - 1)
    basis = _minimize([P[g] for g in G])
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1 :]
        tail = {e: c for e, c in g.terms.items() if e != g.lm}
        r, scale = _reduce_global(tail, others, key)
        # scale * tail == r, so g ~ lc*x^lm + r/scale
        terms = {e: Fraction(c) / scale for e, c in r.items()}
        terms[g.lm] = Fraction(g.lc)
        out.append(terms)
    return out


def _mora_standard_basis(polys: list[dict], key):
    """Returns (entries, corner); see :func:`_corner`."""
    S: list[_Entry] = []
    pairs: list[tuple[int, int]] = []
    nvars = len(next(iter(polys[0])))
    unit = (0,) * nvars
    corner = None

    def install(h):
        nonlocal corner, S, pairs
        S.append(_Entry(h, key))
        k = len(S) - 1
        for i in range(k):
            pairs.append((i, k))
        if corner is None or sum(S[-1].lm) < corner:
            c = _corner([e.lm for e in S], nvars)
            if c is not None and (corner is None or c < corner):
                corner = c
                # drop everything above the corner; entries led there are redundant
                old = S
                S = []
                remap = {}
                for i, e in enumerate(old):
                    if sum(e.lm) <= corner:
                        remap[i] = len(S)
                        S.append(_Entry(_truncate(e.terms, corner), key))
                pairs = [(remap[i], remap[j]) for i, j in pairs if i in remap and j in remap]
        return S[-1].lm == unit

    for f in polys:
        f = _truncate(f, corner)
        if f and install(f):
            return [S[-1]], corner
    while pairs:
        pair = min(pairs, key=lambda pr: _pair_key(S, pr))
        pairs.remove(pair)
        f, g = S[pair[0]], S[pair[1]]
        if _coprime(f.lm, g.lm):
            continue
        s = _spoly(f, g)
        if not s:
            continue
        h = _reduce_mora(s, S, key, corner)
        if h and install(_primitive(h)):
            return [S[-1]], corner
    return _minimize(S), corner


def _lazard_standard_basis(polys: list[dict], key):
    """Local standard basis through a homogenized global computation.

    For a local degree order, homogenize with a new last variable ``h``,
    run Buchberger under (total degree, power of h, local key) and set
    ``h = 1``.  Returns (entries, corner) like the Mora path.
    """
    hp = []
    for t in polys:
        d = max(sum(e) for e in t)
        hp.append({e + (d - sum(e),): c for e, c in t.items()})

    def hkey(E):
        return (sum(E), E[-1], key(E[:-1]))

    out = []
    for t in _buchberger(hp, hkey):
        flat: dict = {}
        for E, c in t.items():
            flat[E[:-1]] = flat.get(E[:-1], 0) + c
        flat = {e: c for e, c in flat.items() if c}
        if flat:
            out.append(_Entry(_to_int_terms_raw(flat), key))
    out = _minimize(out)
    nvars = len(next(iter(polys[0])))
    return out, _corner([e.lm for e in out], nvars)


def _to_int_terms_raw(terms: dict) -> dict:
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return _primitive({e: int(c * den) for e, c in terms.items()})


def _minimize(entries: list[_Entry]) -> list[_Entry]:
    """Drop entries whose leading monomial is divisible by another's."""
    keep = []
    for i, f in enumerate(entries):
        if not any(
            j != i and _divides(g.lm, f.lm) and (g.lm != f.lm or j < i) for j, g in enumerate(entries)
        ):
            keep.append(f)
    return keep


@dataclass(frozen=True)
class GroebnerBasis:
    """Standard basis of an ideal for a given order.

    For global orders the basis is the reduced Gröbner basis (monic, sorted
    by decreasing leading monomial).  For the local order it is a minimal
    monic standard basis (tails are not reduced; reduced standard bases
    need not exist in the localization).
    """

    ring: VariableRing
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    reduced: bool
    # local only: terms of degree > corner lie in the ideal at the origin
    corner: int | None = None

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        zero = (0,) * self.ring.nvars
        return any(lm == zero for lm in self.leading_monomials())

    def is_zero(self) -> bool:
        return not self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _check_ring(polys, ring=None):
    for p in polys:
        if ring is None:
            ring = p.ring
        elif p.ring != ring:
            raise RingMismatch(f"{p.ring} vs {ring}")
    return ring


def standard_basis(
    gens, order: MonomialOrder, ring: VariableRing | None = None, local_method: str = "mora"
) -> GroebnerBasis:
    """Reduced Gröbner basis (global order) or standard basis (local order).

    ``local_method`` is ``"lazard"`` (homogenize, then Buchberger) or
    ``"mora"`` (Mora's tangent cone algorithm); both give a minimal standard
    basis with the same leading ideal.
    """
    gens = list(gens)
    ring = _check_ring(gens, ring)
    if ring is None:
        raise ValueError("cannot infer the ring of an empty generator list")
    key = order.key
    polys = []
    seen = set()
    for g in gens:
        if g.terms:
            t = _to_int_terms(g)
            if t[max(t, key=key)] < 0:
                t = {e: -c for e, c in t.items()}
            fz = frozenset(t.items())
            if fz not in seen:
                seen.add(fz)
                polys.append(t)
    if not polys:
        return GroebnerBasis(ring, order, (), order.is_global)
    if order.is_global:
        raw = _buchberger(polys, key)
        elems = []
        for t in raw:
            p = Polynomial(ring, t)
            elems.append(p.monic(order))
        elems.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
        return GroebnerBasis(ring, order, tuple(elems), True)
    if local_method == "mora":
        entries, corner = _mora_standard_basis(polys, key)
    elif local_method == "lazard":
        entries, corner = _lazard_standard_basis(polys, key)
    else:
        raise ValueError(f"unknown local method {local_method!r}")
    elems = [Polynomial(ring, e.terms).monic(order) for e in entries]
    return GroebnerBasis(ring, order, tuple(elems), False, corner)


def _entries(basis, order):
    key = order.key
    return [_Entry(_to_int_terms(g), key) for g in basis if g.terms]


def normal_form(p: Polynomial, basis, order: MonomialOrder) -> Polynomial:
    """Remainder of ``p`` modulo ``basis``.

    Global orders: full division remainder, exactly congruent to ``p``.
    Local order: Mora's weak normal form, congruent to a unit times ``p``;
    it is zero exactly when ``p`` lies in the ideal localized at the origin
    (given a standard basis).
    """
    corner = None
    if isinstance(basis, GroebnerBasis):
        corner = basis.corner
        basis = basis.elements
    basis = list(basis)
    _check_ring(basis + [p])
    if not p.terms:
        return p
    ents = _entries(basis, order)
    f = _to_int_terms(p)
    factor = p.content()  # p == factor * f
    if order.is_global:
        r, scale = _reduce_global(f, ents, order.key)
        return Polynomial(p.ring, {e: c * factor / scale for e, c in r.items()})
    h = _reduce_mora(f, ents, order.key, corner)
    return Polynomial(p.ring, h).normalized() if h else p.ring.zero()


def reduces_to_zero(p: Polynomial, basis: GroebnerBasis) -> bool:
    if not p.terms:
        return True
    ents = _entries(basis.elements, basis.order)
    f = _to_int_terms(p)
    if basis.order.is_global:
        r, _ = _reduce_global(f, ents, basis.order.key, full=False)
        return not r
    return not _reduce_mora(f, ents, basis.order.key, basis.corner)


def leading_ideal(gb: GroebnerBasis) -> list[tuple]:
    """Minimal generators (exponent tuples) of the leading-term ideal."""
    lms = sorted(set(gb.leading_monomials()), key=gb.order.key, reverse=True)
    out = []
    for i, a in enumerate(lms):
        if not any(_divides(b, a) for j, b in enumerate(lms) if j != i):
            out.append(a)
    return out
