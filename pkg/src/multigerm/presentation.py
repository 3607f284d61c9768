"""Presentation matrices of pushforward modules and their Fitting ideals.

Two branch shapes are supported:

* graph: ``n`` coordinates are the ``n`` source variables, the remaining
  coordinate ``h`` is arbitrary.  The image is the hypersurface ``W = h``
  and the presentation is the 1x1 matrix ``[W - h]``.
* Weierstrass: ``n-1`` coordinates are source variables ``x``, one
  coordinate ``g`` is monic of degree ``m`` in the remaining variable ``y``
  and ``h`` is the last one.  ``Q[x, y]`` is free over ``Q[X, G]`` with basis
  ``1, y, ..., y^(m-1)`` and the presentation is multiplication by ``W - h``
  modulo ``g(X, y) - G``.

Presentations are not unique; everything downstream only depends on the
Fitting ideals, which are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .ideal import Ideal
from .orders import DEGREVLEX
from .poly import Polynomial, RingMismatch, VariableRing


class UnsupportedBranch(ValueError):
    pass


class NotMonic(ValueError):
    pass


@dataclass(frozen=True)
class BranchGerm:
    """Germ at the origin ``(Q^n, 0) -> (Q^(n+1), 0)`` given by coordinates."""

    source: VariableRing
    target: VariableRing
    coords: tuple[Polynomial, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if self.target.nvars != self.source.nvars + 1:
            raise ValueError(
                f"branch {self.label or '?'}: target has {self.target.nvars} variables, "
                f"expected {self.source.nvars + 1}"
            )
        if len(self.coords) != self.target.nvars:
            raise ValueError(
                f"branch {self.label or '?'}: {len(self.coords)} coordinates for a target of dimension {self.target.nvars}"
            )
        for c in self.coords:
            if c.ring != self.source:
                raise RingMismatch(f"coordinate {c} is not in the source ring {self.source}")
            if c.constant_coeff():
                raise ValueError(f"branch {self.label or '?'}: coordinate {c} does not vanish at the origin")

    @property
    def n(self) -> int:
        return self.source.nvars

    def as_images(self) -> dict[str, Polynomial]:
        return dict(zip(self.target.variables, self.coords))


@dataclass(frozen=True)
class MultiGerm:
    """Branches sharing one target ring, listed in source-point order."""

    target: VariableRing
    branches: tuple[BranchGerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise ValueError("a multi-germ needs at least one branch")
        for b in self.branches:
            if b.target != self.target:
                raise RingMismatch(f"branch {b.label or '?'} targets {b.target}, expected {self.target}")

    @property
    def r(self) -> int:
        return len(self.branches)

    @property
    def n(self) -> int:
        return self.target.nvars - 1


@dataclass(frozen=True)
class BranchForm:
    """Detected shape of a branch.

    ``xcoords`` maps source variables to the coordinate index they fill.
    For graphs, ``free`` is the index of the non-variable coordinate.  For
    Weierstrass forms, ``monic`` is the index of the coordinate monic of
    degree ``degree`` in ``fiber`` and ``free`` the remaining one.
    """

    kind: str
    xcoords: tuple[tuple[str, int], ...] = ()
    free: int | None = None
    fiber: str | None = None
    monic: int | None = None
    degree: int | None = None

    def __str__(self):
        if self.kind == "graph":
            return f"graph(free coordinate {self.free + 1})"
        if self.kind == "weierstrass":
            return f"weierstrass({self.fiber}, coordinate {self.monic + 1}, m={self.degree})"
        return "unsupported"


def _variable_of(p: Polynomial) -> str | None:
    if len(p.terms) != 1:
        return None
    (e, c), = p.terms.items()
    if c != 1 or sum(e) != 1:
        return None
    return p.ring.variables[e.index(1)]


def monic_degree(p: Polynomial, var: str) -> int | None:
    """Degree of ``p`` in ``var`` if its leading coefficient there is a nonzero constant."""
    d = p.degree_in(var)
    if d < 1:
        return None
    lead = p.coeffs_in(var)[d]
    return d if lead.is_constant() else None


def detect_form(b: BranchGerm) -> BranchForm:
    n = b.n
    var_of = [_variable_of(c) for c in b.coords]
    # graph: all source variables appear as coordinates, one coordinate free
    for w in range(n + 1):
        others = [var_of[i] for i in range(n + 1) if i != w]
        if None not in others and set(others) == set(b.source.variables):
            xc = tuple((var_of[i], i) for i in range(n + 1) if i != w)
            return BranchForm("graph", xc, free=w)
    best = None
    for g, h in ((g, h) for g in range(n + 1) for h in range(n + 1) if g != h):
        rest = [i for i in range(n + 1) if i not in (g, h)]
        xs = [var_of[i] for i in rest]
        if None in xs or len(set(xs)) != len(xs):
            continue
        (y,) = set(b.source.variables) - set(xs)
        m = monic_degree(b.coords[g], y)
        if m is None:
            continue
        if best is None or m < best.degree:
            xc = tuple((var_of[i], i) for i in rest)
            best = BranchForm("weierstrass", xc, free=h, fiber=y, monic=g, degree=m)
    return best or BranchForm("unsupported")


@dataclass(frozen=True)
class PresentationMatrix:
    """Square polynomial matrix over ``ring``."""

    ring: VariableRing
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        q = len(rows)
        for r in rows:
            if len(r) != q:
                raise ValueError("presentation matrix must be square")
            for e in r:
                if e.ring != self.ring:
                    raise RingMismatch(f"entry {e} not in {self.ring}")

    @classmethod
    def parse(cls, ring: VariableRing, rows: Sequence[Sequence[str]]) -> "PresentationMatrix":
        return cls(ring, tuple(tuple(ring(s) for s in r) for r in rows))

    @property
    def q(self) -> int:
        return len(self.entries)

    def to_lists(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self.entries]

    def __str__(self):
        cells = self.to_lists()
        if not cells:
            return "[ ]"
        width = [max(len(r[j]) for r in cells) for j in range(self.q)]
        return "\n".join("[ " + "  ".join(c.ljust(w) for c, w in zip(r, width)) + " ]" for r in cells)

    def det(self) -> Polynomial:
        if self.q == 0:
            return self.ring.one()
        return minors(self.entries, self.q, self.ring)[0]


def minors(rows: Sequence[Sequence[Polynomial]], size: int, ring: VariableRing) -> list[Polynomial]:
    """All ``size x size`` minors of a (possibly rectangular) matrix."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    if size == 0:
        return [ring.one()]
    if size > min(nr, nc):
        return []
    level = {((r,), (c,)): rows[r][c] for r in range(nr) for c in range(nc)}
    for s in range(2, size + 1):
        nxt = {}
        for R in combinations(range(nr), s):
            r0, rest = R[0], R[1:]
            for C in combinations(range(nc), s):
                total = ring.zero()
                for idx, c in enumerate(C):
                    a = rows[r0][c]
                    if not a:
                        continue
                    sub = level[(rest, C[:idx] + C[idx + 1 :])]
                    if not sub:
                        continue
                    term = a * sub
                    total = total - term if idx % 2 else total + term
                nxt[(R, C)] = total
        level = nxt
    return [level[k] for k in sorted(level)]


def _positive(p: Polynomial) -> Polynomial:
    return -p if p.terms and p.leading_coeff(DEGREVLEX) < 0 else p


def mult_matrix_presentation(g_mod: Polynomial, g_mult: Polynomial, fiber: str) -> PresentationMatrix:
    """Matrix of multiplication by ``g_mult`` on ``1, y, ..., y^(m-1)`` modulo ``g_mod``.

    ``g_mod`` must be monic (up to a constant) of degree ``m`` in ``y = fiber``.
    Entry ``(i, j)`` is the coefficient of ``y^i`` in ``y^j * g_mult mod g_mod``.
    """
    if g_mod.ring != g_mult.ring:
        raise RingMismatch(f"{g_mod.ring} vs {g_mult.ring}")
    R = g_mod.ring
    base = R.without([fiber])
    m = monic_degree(g_mod, fiber)
    if m is None:
        raise NotMonic(f"{g_mod} is not monic of positive degree in {fiber}")
    cm = g_mod.coeffs_in(fiber, base)
    lead = cm[m].constant_coeff()
    red = [cm.get(i, base.zero()) * (Fraction(1) / Fraction(lead)) for i in range(m)]
    mult = g_mult.coeffs_in(fiber, base)
    dmult = max(mult) if mult else 0
    cols = []
    for j in range(m):
        v = [base.zero() for _ in range(max(m, dmult + j + 1))]
        for d, c in mult.items():
            v[d + j] = v[d + j] + c
        for d in range(len(v) - 1, m - 1, -1):
            c = v[d]
            if c:
                for i in range(m):
                    if red[i]:
                        v[d - m + i] = v[d - m + i] - c * red[i]
                v[d] = base.zero()
        cols.append(v[:m])
    entries = tuple(tuple(cols[j][i] for j in range(m)) for i in range(m))
    return PresentationMatrix(base, entries)


def branch_presentation(b: BranchGerm, form: BranchForm | None = None) -> PresentationMatrix:
    form = form or detect_form(b)
    T = b.target
    if form.kind == "graph":
        images = {x: T.gen(T.variables[i]) for x, i in form.xcoords}
        h = b.coords[form.free].subs(images, T)
        entry = _positive(T.gen(T.variables[form.free]) - h)
        return PresentationMatrix(T, ((entry,),))
    if form.kind == "weierstrass":
        fib = T.fresh(form.fiber)
        big = T.extend([fib])
        images = {x: big.gen(T.variables[i]) for x, i in form.xcoords}
        images[form.fiber] = big.gen(fib)
        g = b.coords[form.monic].subs(images, big) - big.gen(T.variables[form.monic])
        h = big.gen(T.variables[form.free]) - b.coords[form.free].subs(images, big)
        return mult_matrix_presentation(g, h, fib)
    raise UnsupportedBranch(
        f"branch {b.label or '?'} is neither a graph nor in Weierstrass form "
        "(corank >= 2 or non-normalized coordinates are not supported)"
    )


def block_diagonal(mats: Sequence[PresentationMatrix], ring: VariableRing | None = None) -> PresentationMatrix:
    if not mats and ring is None:
        raise ValueError("need a ring for an empty block list")
    ring = ring or mats[0].ring
    for M in mats:
        if M.ring != ring:
            raise RingMismatch(f"{M.ring} vs {ring}")
    q = sum(M.q for M in mats)
    rows = [[ring.zero()] * q for _ in range(q)]
    off = 0
    for M in mats:
        for i in range(M.q):
            for j in range(M.q):
                rows[off + i][off + j] = M.entries[i][j]
        off += M.q
    return PresentationMatrix(ring, tuple(tuple(r) for r in rows))


def fitting_ideal(lam: PresentationMatrix, k: int) -> Ideal:
    """Ideal of the ``(q-k)``-minors; the unit ideal when ``k >= q``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k >= lam.q:
        return Ideal.unit(lam.ring)
    gens = []
    seen = set()
    for p in minors(lam.entries, lam.q - k, lam.ring):
        if p.terms:
            p = _positive(p)
            if p not in seen:
                seen.add(p)
                gens.append(p)
    return Ideal(lam.ring, gens)
