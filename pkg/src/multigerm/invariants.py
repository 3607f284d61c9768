"""Invariants of curve germs: multiplicity, polar multiplicity, Milnor number, delta.

Generic choices (linear forms, deformation matrices) are drawn from a
seeded :class:`RandomizationPolicy` and every value is recomputed for
several seeds; disagreement raises :class:`UnstableInvariant`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .groebner import standard_basis
from .ideal import INFINITE, Ideal, colength, dimension, intersect_all
from .orders import DEGREVLEX
from .poly import Polynomial, VariableRing
from .presentation import MultiGerm, minors


class UnstableInvariant(ArithmeticError):
    pass


class ParityError(ValueError):
    pass


class InfiniteIntersection(ArithmeticError):
    pass


@dataclass(frozen=True)
class RandomizationPolicy:
    seed: int = 0
    height: int = 5
    retries: int = 3
    checks: int = 3

    def rounds(self):
        """Seed lists to try: ``checks`` seeds per round, ``retries`` rounds."""
        for r in range(self.retries):
            base = self.seed + 1000 * r
            yield [base + i for i in range(self.checks)]

    def nonzero(self, rng: random.Random) -> int:
        return rng.choice([k for k in range(-self.height, self.height + 1) if k])


@dataclass(frozen=True)
class Value:
    """A computed number with the formula behind it and the seeds consumed."""

    value: object
    formula: str
    seeds: tuple[int, ...] = ()

    def __str__(self):
        seeds = f" seeds={','.join(map(str, self.seeds))}" if self.seeds else ""
        return f"{self.value} [{self.formula}]{seeds}"


def _stable(compute, policy: RandomizationPolicy, what: str) -> tuple[object, tuple[int, ...]]:
    seen = []
    for seeds in policy.rounds():
        vals = [compute(random.Random(s)) for s in seeds]
        seen.append(vals)
        if INFINITE not in vals and len(set(vals)) == 1:
            return vals[0], tuple(seeds)
    raise UnstableInvariant(f"{what}: values {seen} disagree across seeds")


def linear_form(ring: VariableRing, rng: random.Random, policy: RandomizationPolicy) -> Polynomial:
    return sum((policy.nonzero(rng) * ring.gen(v) for v in ring.variables), ring.zero())


def multiplicity_m0(I: Ideal, policy: RandomizationPolicy = RandomizationPolicy()) -> Value:
    """Local colength of ``I`` plus a generic linear form."""
    d = dimension(I, "local")
    if d != 1:
        raise ValueError(f"expected a curve germ, local dimension is {d}")

    def one(rng):
        return colength(I + Ideal(I.ring, [linear_form(I.ring, rng, policy)]), "local")

    v, seeds = _stable(one, policy, "m0")
    return Value(v, "dim O/(I + <generic linear form>)", seeds)


def _limit_fiber(gens: Sequence[Polynomial], base: VariableRing, s: str) -> Ideal:
    """Special fiber at ``s = 0`` of the closure of ``V(gens) ∩ {s != 0}``.

    Saturation by ``s`` uses a homogeneous degrevlex basis with ``s`` last:
    there, dividing each element by its largest power of ``s`` saturates.
    """
    ring = gens[0].ring
    h = ring.fresh("h")
    names = [v for v in ring.variables if v != s] + [h, s]
    H = VariableRing(tuple(names))
    order_in = [ring.index(v) for v in names[:-2]] + [ring.index(s)]
    hom = []
    for g in gens:
        d = g.degree()
        terms = {}
        for e, c in g.terms.items():
            E = tuple(e[i] for i in order_in[:-1]) + (d - sum(e), e[order_in[-1]])
            terms[E] = c
        hom.append(Polynomial(H, terms))
    gb = standard_basis(hom, DEGREVLEX, H)
    out = []
    for g in gb:
        k = min(e[-1] for e in g.terms)
        t: dict = {}
        for e, c in g.terms.items():
            if e[-1] == k:
                key = e[:-2]
                t[key] = t.get(key, 0) + c
        out.append(Polynomial(base, t))
    return Ideal(base, out)


def polar_m1(matrix: Sequence[Sequence[Polynomial]], policy: RandomizationPolicy = RandomizationPolicy()) -> Value:
    """Number of critical points of a generic linear form on a smoothing.

    The curve is ``V(maximal minors of matrix)``; the smoothing is
    ``V(maximal minors of matrix + s*A)`` with ``A`` generic.  Critical
    points are counted as ``s -> 0`` by taking the limit fiber of the
    critical locus and its local colength at the origin, so points escaping
    to infinity are not counted.
    """
    rows = [list(r) for r in matrix]
    ring = rows[0][0].ring
    nr, nc = len(rows), len(rows[0])
    codim = nr - nc + 1
    N = ring.nvars
    if N - codim != 1:
        raise ValueError(f"maximal minors of a {nr}x{nc} matrix in {N} variables do not cut out a curve")
    s = ring.fresh("s")
    R = ring.extend([s])
    S = R.gen(s)

    def one(rng):
        A = [[rng.randint(-policy.height, policy.height) for _ in range(nc)] for _ in range(nr)]
        M = [[rows[i][j].to_ring(R) + A[i][j] * S for j in range(nc)] for i in range(nr)]
        gens = [g for g in minors(M, nc, R) if g.terms]
        p = linear_form(ring, rng, policy).to_ring(R)
        jac = [[g.diff(v) for v in ring.variables] for g in gens]
        dp = [p.diff(v) for v in ring.variables]
        # dp in the span of codim generator gradients; away from s = 0 the
        # full Jacobian has rank codim on the smooth fiber, so only minors
        # through the dp row are needed
        crit = list(gens)
        for sub in combinations(range(len(gens)), N - 1):
            m = minors([jac[i] for i in sub] + [dp], N, R)[0]
            if m.terms:
                crit.append(m)
        return colength(_limit_fiber(crit, ring, s), "local")

    v, seeds = _stable(one, policy, "m1")
    return Value(v, "critical points of generic p on the smoothing, s -> 0", seeds)


def milnor_from_polar(m0: int, m1: int) -> int:
    return m1 - m0 + 1


def delta_from_milnor(mu: int, r: int) -> int:
    if (mu + r - 1) % 2:
        raise ParityError(f"mu + r - 1 = {mu + r - 1} is odd")
    return (mu + r - 1) // 2


def milnor_from_delta(delta: int, r: int) -> int:
    return 2 * delta - r + 1


def milnor_number(g: Polynomial) -> object:
    """Milnor number of a hypersurface germ: local colength of its partials."""
    return colength(Ideal(g.ring, [g.diff(v) for v in g.ring.variables]), "local")


def branch_count_bound(mu: int, m0: int) -> list[int]:
    """Branch counts ``r <= m0`` compatible with ``mu = 2 delta - r + 1``."""
    return [r for r in range(1, m0 + 1) if (mu + r - 1) % 2 == 0]


def intersection_number(I: Ideal, J: Ideal) -> int:
    c = colength(I + J, "local")
    if c == INFINITE:
        raise InfiniteIntersection("the intersection is not an isolated point")
    return c


@dataclass
class DeltaReport:
    total: int
    terms: list[tuple[str, int]] = field(default_factory=list)

    def __str__(self):
        return " + ".join(str(v) for _, v in self.terms) + f" = {self.total}"


def hironaka_delta(parts: Sequence[tuple[int, Ideal]], labels: Sequence[str] | None = None) -> DeltaReport:
    """Delta of a union: part deltas plus each part meeting the union of the later ones.

    With parts ``P1..Pk`` this is ``sum delta(Pi) + sum_i Pi . (P_{i+1} ∪ ... ∪ Pk)``.
    """
    labels = list(labels) if labels else [f"P{i + 1}" for i in range(len(parts))]
    report = DeltaReport(0)
    for (d, _), name in zip(parts, labels):
        report.terms.append((f"delta({name})", d))
    for i in range(len(parts) - 1):
        I = parts[i][1]
        rest = intersect_all(I.ring, [J for _, J in parts[i + 1 :]])
        rest_name = "(" + " u ".join(labels[i + 1 :]) + ")"
        report.terms.append((f"{labels[i]}.{rest_name}", intersection_number(I, rest)))
    report.total = sum(v for _, v in report.terms)
    return report


@dataclass(frozen=True)
class QuadrupleCount:
    value: Fraction
    colengths: tuple[int, ...]

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1


def quadruple_count(f: MultiGerm) -> QuadrupleCount:
    from .source import source_multipoint

    lengths = []
    for i, I in enumerate(source_multipoint(f, 3)):
        c = colength(I, "local")
        if c == INFINITE:
            raise InfiniteIntersection(f"source quadruple space at point {i + 1} is not finite")
        lengths.append(c)
    return QuadrupleCount(Fraction(sum(lengths), 4), tuple(lengths))


@dataclass
class CurveInvariantReport:
    ideal: Ideal
    m0: Value | None = None
    m1: Value | None = None
    mu: Value | None = None
    delta: Value | None = None
    r: int | None = None

    def lines(self) -> list[str]:
        out = []
        for name in ("m0", "m1", "mu", "delta"):
            v = getattr(self, name)
            if v is not None:
                out.append(f"{name} = {v}")
        out.append(f"r = {self.r if self.r is not None else 'unknown'}")
        return out


def curve_report(
    I: Ideal,
    matrix=None,
    r: int | None = None,
    policy: RandomizationPolicy = RandomizationPolicy(),
) -> CurveInvariantReport:
    """m0 always; m1 and mu when a determinantal matrix is given; delta when r is known."""
    rep = CurveInvariantReport(I, r=r)
    rep.m0 = multiplicity_m0(I, policy)
    if rep.m0.value == 1:
        # smooth branch
        rep.mu = Value(0, "smooth curve")
        rep.delta = Value(0, "smooth curve")
        rep.r = 1
        return rep
    if matrix is not None:
        rep.m1 = polar_m1(matrix, policy)
        rep.mu = Value(milnor_from_polar(rep.m0.value, rep.m1.value), "m1 - m0 + 1")
    if rep.mu is not None and r is not None:
        rep.delta = Value(delta_from_milnor(rep.mu.value, r), "(mu + r - 1)/2")
    return rep
