"""Source double point space and the source triple/quadruple spaces.

Component ``(i, j)`` of the double point space lives over source point
``i``: its ring has the variables of branch ``i`` (the base) and a copy of
those of branch ``j`` (the fiber), renamed when they clash.  The projection
to the base is presented like a branch and the usual Fitting machinery
gives ``D^2_k = M_k`` of that projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ideal import Ideal, equals, pullback
from .poly import Polynomial, VariableRing
from .presentation import (
    BranchGerm,
    MultiGerm,
    PresentationMatrix,
    UnsupportedBranch,
    detect_form,
    minors,
    monic_degree,
    mult_matrix_presentation,
)
from .target import FittingLadder, target_space


@dataclass(frozen=True)
class AlphaMatrix:
    """``(n+1) x n`` matrix with ``f(x') - f(x) = alpha . (x' - x)``."""

    ring: VariableRing
    unprimed: tuple[str, ...]
    primed: tuple[str, ...]
    entries: tuple[tuple[Polynomial, ...], ...]

    def reconstruct(self) -> list[Polynomial]:
        diffs = [self.ring.gen(p) - self.ring.gen(u) for u, p in zip(self.unprimed, self.primed)]
        return [sum((a * d for a, d in zip(row, diffs)), self.ring.zero()) for row in self.entries]


def _primed_ring(source: VariableRing) -> tuple[VariableRing, tuple[str, ...]]:
    names = []
    ring = source
    for v in source.variables:
        new = ring.fresh(v)
        names.append(new)
        ring = ring.extend([new])
    return source.extend(names), tuple(names)


def alpha_matrix(b: BranchGerm) -> AlphaMatrix:
    """Telescoping divided differences, one column per source variable."""
    src = b.source
    big, primed = _primed_ring(src)
    xs = src.variables
    n = len(xs)

    def mixed(j):
        # unprimed x_1..x_j, primed after
        return {xs[i]: big.gen(xs[i] if i < j else primed[i]) for i in range(n)}

    rows = []
    for c in b.coords:
        row = []
        for j in range(n):
            hi = c.subs(mixed(j), big)
            lo = c.subs(mixed(j + 1), big)
            row.append((hi - lo).exact_div(big.gen(primed[j]) - big.gen(xs[j])))
        rows.append(tuple(row))
    return AlphaMatrix(big, xs, primed, tuple(rows))


def divided_difference(p: Polynomial, var: str, new: str, ring: VariableRing) -> Polynomial:
    """``(p(var=new) - p) / (new - var)`` in ``ring``."""
    q = p.to_ring(ring) if p.ring != ring else p
    return (q.subs({var: ring.gen(new)}, ring) - q).exact_div(ring.gen(new) - ring.gen(var))


@dataclass(frozen=True)
class DoubleSpaceComponent:
    i: int
    j: int
    ring: VariableRing
    base: tuple[str, ...]
    fiber: tuple[str, ...]
    ideal: Ideal
    kind: str
    form: str = ""

    @property
    def base_ring(self) -> VariableRing:
        return VariableRing(self.base)

    def report(self) -> list[str]:
        out = [
            f"component ({self.i + 1},{self.j + 1}) {self.kind} {self.form}".rstrip(),
            "  ring: " + ", ".join(self.ring.variables),
        ]
        out += ["  " + str(g) for g in self.ideal.gens] or ["  (zero ideal)"]
        return out


def _diagonal(b: BranchGerm, i: int) -> DoubleSpaceComponent:
    form = detect_form(b)
    src = b.source
    if form.kind == "graph":
        # an immersion has no double points near the diagonal
        return DoubleSpaceComponent(i, i, src, src.variables, (), Ideal.unit(src), "diagonal", str(form))
    if form.kind == "weierstrass":
        y = form.fiber
        y2 = src.fresh(y)
        ring = src.extend([y2])
        gens = [divided_difference(b.coords[k], y, y2, ring) for k in (form.monic, form.free)]
        return DoubleSpaceComponent(i, i, ring, src.variables, (y2,), Ideal(ring, gens), "diagonal", str(form))
    alpha = alpha_matrix(b)
    ring = alpha.ring
    images = {u: ring.gen(p) for u, p in zip(alpha.unprimed, alpha.primed)}
    gens = [c.subs(images, ring) - c.to_ring(ring) for c in b.coords]
    gens += [m for m in minors(alpha.entries, src.nvars, ring) if m.terms]
    return DoubleSpaceComponent(i, i, ring, src.variables, alpha.primed, Ideal(ring, gens), "diagonal", str(form))


def _off_diagonal(bi: BranchGerm, bj: BranchGerm, i: int, j: int) -> DoubleSpaceComponent:
    base = bi.source
    ring = base
    rename = {}
    for v in bj.source.variables:
        new = ring.fresh(v)
        rename[v] = new
        ring = ring.extend([new])
    images = {v: ring.gen(rename[v]) for v in bj.source.variables}
    gens = [cj.subs(images, ring) - ci.to_ring(ring) for ci, cj in zip(bi.coords, bj.coords)]
    fiber = tuple(rename[v] for v in bj.source.variables)
    return DoubleSpaceComponent(i, j, ring, base.variables, fiber, Ideal(ring, gens), "off-diagonal")


def double_space(f: MultiGerm) -> list[DoubleSpaceComponent]:
    """All ``r^2`` components, ordered by (i, j)."""
    out = []
    for i, bi in enumerate(f.branches):
        for j, bj in enumerate(f.branches):
            out.append(_diagonal(bi, i) if i == j else _off_diagonal(bi, bj, i, j))
    return out


def _pin(gens: list[Polynomial], fiber: Sequence[str]) -> tuple[list[Polynomial], dict[str, Polynomial]]:
    """Substitute fiber variables fixed by a generator ``c*v - q`` with ``v`` not in ``q``."""
    gens = list(gens)
    pinned: dict[str, Polynomial] = {}
    changed = True
    while changed:
        changed = False
        for k, g in enumerate(gens):
            for v in fiber:
                if v in pinned or g.degree_in(v) != 1:
                    continue
                parts = g.coeffs_in(v)
                lead = parts[1]
                if not lead.is_constant():
                    continue
                rest = parts[0].to_ring(g.ring) if 0 in parts else g.ring.zero()
                value = -rest / lead.constant_coeff()
                pinned[v] = value
                others = gens[:k] + gens[k + 1 :]
                gens = [h.subs({v: value}, h.ring) for h in others]
                gens = [h for h in gens if h.terms]
                changed = True
                break
            if changed:
                break
    return gens, pinned


def projection_presentation(comp: DoubleSpaceComponent, modulus_degree: int | None = None) -> PresentationMatrix:
    """Presentation of the pushforward of the component to its base.

    Fiber variables pinned by linear equations are substituted away.  With
    no fiber variable left the component is a hypersurface of the base and
    the matrix is 1x1.  With one left, a generator monic in it is the
    modulus (lowest degree, or degree ``modulus_degree`` if given) and the
    other generator the multiplier.
    """
    base = comp.base_ring
    if comp.ideal.is_unit("local"):
        return PresentationMatrix(base, ())
    gens, _ = _pin(list(comp.ideal.gens), comp.fiber)
    left = [v for v in comp.fiber if any(g.degree_in(v) > 0 for g in gens)]
    if not left:
        flat = [g.to_ring(base) for g in gens]
        red = Ideal(base, flat).reduced_generators()
        if len(red) != 1:
            raise UnsupportedBranch(
                f"component ({comp.i + 1},{comp.j + 1}) projects to a non-hypersurface ({len(red)} generators)"
            )
        return PresentationMatrix(base, ((red[0],),))
    if len(left) > 1:
        raise UnsupportedBranch(
            f"component ({comp.i + 1},{comp.j + 1}) keeps {len(left)} fiber variables: {', '.join(left)}"
        )
    (y,) = left
    ring = base.extend([y])
    gens = [g.to_ring(ring) for g in gens]
    monic = [(monic_degree(g, y), k) for k, g in enumerate(gens)]
    monic = [(d, k) for d, k in monic if d is not None]
    if modulus_degree is not None:
        monic = [(d, k) for d, k in monic if d == modulus_degree] or monic
    if not monic:
        raise UnsupportedBranch(f"component ({comp.i + 1},{comp.j + 1}): no generator is monic in {y}")
    if len(gens) > 2:
        raise UnsupportedBranch(
            f"component ({comp.i + 1},{comp.j + 1}): {len(gens)} equations left, only two are supported"
        )
    _, k = min(monic)
    mult = gens[1 - k] if len(gens) == 2 else ring.zero()
    return mult_matrix_presentation(gens[k], mult, y)


def source_ladders(f: MultiGerm, modulus_degree: int | None = None) -> list[FittingLadder]:
    """One ladder per source point, built from the components projecting to it."""
    comps = double_space(f)
    out = []
    for i, b in enumerate(f.branches):
        mats, labels = [], []
        for c in comps:
            if c.i != i:
                continue
            m = projection_presentation(c, modulus_degree)
            if m.q:
                mats.append(m)
                labels.append(f"X({c.i + 1},{c.j + 1})")
        out.append(FittingLadder(b.source, mats, b.source.nvars - 1, labels))
    return out


def source_multipoint(f: MultiGerm, k: int, modulus_degree: int | None = None) -> list[Ideal]:
    """``D^2_k`` at each source point, as ``F_{k-1}`` of the projection there."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return [lad.total(k - 1) if lad.mats else Ideal.unit(lad.ring) for lad in source_ladders(f, modulus_degree)]


def preimage_ideals(f: MultiGerm, k: int) -> list[Ideal]:
    M = target_space(f, k + 1)
    return [pullback(M, list(b.coords), b.source) for b in f.branches]


def preimage_compare(f: MultiGerm, k: int, mode: str = "local") -> bool:
    """Whether ``D^2_k`` equals the pullback of ``M_{k+1}`` at every source point."""
    ours = source_multipoint(f, k)
    theirs = preimage_ideals(f, k)
    return all(equals(a, b, mode) for a, b in zip(ours, theirs))
