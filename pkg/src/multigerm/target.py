"""Target multiple point ideals and the intersection formulas built on them.

``M_k`` is cut out by ``F_{k-1}`` of the block-diagonal presentation.  The
double and triple point formulas rebuild ``F_1`` and ``F_2`` from the
per-branch ladders; their hypotheses are checked at run time and reported
in a :class:`HypothesisAudit` rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .ideal import (
    Ideal,
    dimension,
    equals,
    intersect,
    intersect_all,
    product,
    product_all,
    radical_membership,
    sum_all,
)
from .poly import VariableRing
from .presentation import MultiGerm, PresentationMatrix, block_diagonal, branch_presentation, fitting_ideal


class FormulaNotApplicable(ValueError):
    pass


PASS, FAIL, ASSUMED = "PASS", "FAIL", "ASSUMED"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class HypothesisAudit:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool | None, detail: str = "") -> None:
        status = ASSUMED if ok is None else PASS if ok else FAIL
        self.checks.append(Check(name, status, detail))

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self):
        return "\n".join(self.lines())


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class FittingLadder:
    """Fitting ideals of a list of branch presentations over one ring.

    ``n`` is the expected dimension of the source, so that ``M_k`` is
    dimensionally correct when its local dimension is ``n - k + 1``.
    """

    def __init__(self, ring: VariableRing, mats: Sequence[PresentationMatrix], n: int | None = None, labels=None):
        self.ring = ring
        self.mats = list(mats)
        self.n = ring.nvars - 1 if n is None else n
        self.labels = list(labels) if labels else [f"b{i + 1}" for i in range(len(self.mats))]
        self.block = block_diagonal(self.mats, ring)
        self._branch: dict[tuple[int, int], Ideal] = {}
        self._total: dict[int, Ideal] = {}

    @classmethod
    def of(cls, f: MultiGerm) -> "FittingLadder":
        mats = [branch_presentation(b) for b in f.branches]
        return cls(f.target, mats, f.n, [b.label or f"b{i + 1}" for i, b in enumerate(f.branches)])

    @property
    def r(self) -> int:
        return len(self.mats)

    @property
    def q(self) -> int:
        return self.block.q

    def branch(self, i: int, j: int) -> Ideal:
        """``F_j`` of branch ``i``; ``j = -1`` gives the zero ideal (M_0 is everything)."""
        if j < 0:
            return Ideal.zero(self.ring)
        if (i, j) not in self._branch:
            self._branch[(i, j)] = fitting_ideal(self.mats[i], j)
        return self._branch[(i, j)]

    def total(self, k: int) -> Ideal:
        if k < 0:
            return Ideal.zero(self.ring)
        if k not in self._total:
            self._total[k] = fitting_ideal(self.block, k)
        return self._total[k]

    def reordered(self, order: Sequence[int]) -> "FittingLadder":
        return FittingLadder(self.ring, [self.mats[i] for i in order], self.n, [self.labels[i] for i in order])

    def sub(self, idx: Sequence[int]) -> "FittingLadder":
        return FittingLadder(self.ring, [self.mats[i] for i in idx], self.n, [self.labels[i] for i in idx])


def _ladder(f) -> FittingLadder:
    return f if isinstance(f, FittingLadder) else FittingLadder.of(f)


def target_space(f, k: int) -> Ideal:
    """Ideal ``F_{k-1}`` defining ``M_k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return _ladder(f).total(k - 1)


def local_dimension(I: Ideal) -> int:
    return dimension(I, "local")


def dimensionally_correct(f, k: int) -> tuple[bool, int, int]:
    """(ok, actual, expected) for ``dim M_k = n - k + 1`` at the origin.

    An empty ``M_k`` has dimension -1, which is what is expected once
    ``k = n + 2``; anything smaller than that must also be empty.
    """
    lad = _ladder(f)
    want = max(lad.n - k + 1, -1)
    got = local_dimension(lad.total(k - 1))
    return got == want, got, want


def branch_expansion(f, k: int) -> Ideal:
    """Sum over ``j_1 + ... + j_r = k`` of ``F_{j_1}^(1) ... F_{j_r}^(r)``."""
    lad = _ladder(f)
    terms = []
    for js in _compositions(k, lad.r):
        terms.append(product_all(lad.ring, (lad.branch(i, j) for i, j in enumerate(js))))
    return sum_all(lad.ring, terms)


def _audit_dim(audit: HypothesisAudit, lad: FittingLadder, k: int, what: str) -> bool:
    ok, got, want = dimensionally_correct(lad, k)
    audit.add(f"dim M{k} = {want} ({what})", ok, f"local dimension {got}")
    return ok


def double_formula(f) -> tuple[Ideal, HypothesisAudit]:
    """Intersection of the ``F_1^(i)`` and the pairwise ``F_0^(i) + F_0^(j)``."""
    lad = _ladder(f)
    audit = HypothesisAudit()
    _audit_dim(audit, lad, 2, "generically one-to-one")
    _audit_dim(audit, lad, 3, "triple points")
    pieces = [lad.branch(i, 1) for i in range(lad.r)]
    for i, j in combinations(range(lad.r), 2):
        pieces.append(lad.branch(i, 0) + lad.branch(j, 0))
    return intersect_all(lad.ring, pieces), audit


def _m3_nonempty(lad: FittingLadder, i: int) -> bool:
    return not lad.branch(i, 2).is_unit("local")


def triple_formula(f) -> tuple[Ideal, HypothesisAudit]:
    """Triple point formula; the branch with triple points (if any) goes first."""
    lad = _ladder(f)
    with_m3 = [i for i in range(lad.r) if _m3_nonempty(lad, i)]
    if len(with_m3) > 1:
        names = ", ".join(lad.labels[i] for i in with_m3)
        raise FormulaNotApplicable(f"several branches have triple points of their own: {names}")
    if with_m3 and with_m3[0] != 0:
        first = with_m3[0]
        lad = lad.reordered([first] + [i for i in range(lad.r) if i != first])
    audit = HypothesisAudit()
    _audit_dim(audit, lad, 3, "triple points")
    _audit_dim(audit, lad, 4, "quadruple points")
    audit.add(
        "M3 of branches after the first is empty",
        True,
        "first branch: " + lad.labels[0],
    )
    audit.add("source is Gorenstein", None, "smooth sources only")
    audit.add("source is a complete intersection", None, "smooth sources only")
    pieces = [lad.branch(0, 2)]
    for i, j in combinations(range(lad.r), 2):
        pieces.append(lad.branch(i, 1) + lad.branch(j, 0))
        pieces.append(lad.branch(i, 0) + lad.branch(j, 1))
    for i, j, k in combinations(range(lad.r), 3):
        pieces.append(sum_all(lad.ring, [lad.branch(i, 0), lad.branch(j, 0), lad.branch(k, 0)]))
    return intersect_all(lad.ring, pieces), audit


def decomposition_pieces(f, k: int) -> list[Ideal]:
    """One ideal per way of splitting ``k`` points among the branches."""
    lad = _ladder(f)
    out = []
    for ks in _compositions(k, lad.r):
        out.append(sum_all(lad.ring, [lad.branch(i, ki - 1) for i, ki in enumerate(ks)]))
    return out


def decomposition_check(f, k: int) -> bool:
    """Whether ``V(F_{k-1})`` is the union of the pieces, tested by radical membership."""
    lad = _ladder(f)
    whole = lad.total(k - 1)
    pieces = [P for P in decomposition_pieces(lad, k) if not P.is_unit()]
    if whole.is_unit():
        return not pieces
    if not pieces:
        return False
    # each piece lies in V(whole)
    for P in pieces:
        if not all(radical_membership(P, g) for g in whole.gens):
            return False
    # V(whole) lies in the union of the pieces
    union = product_all(lad.ring, pieces)
    return all(radical_membership(whole, g) for g in union.gens)


def last_branch_split(f) -> tuple[Ideal, Ideal]:
    """Both sides of ``F'_1 F_0 ∩ F'_0 F_1 = F'_0 F_0``.

    Primed ideals belong to the first ``r-1`` branches together, unprimed
    ones to the last branch.
    """
    lad = _ladder(f)
    if lad.r < 2:
        raise ValueError("need at least two branches")
    head = lad.sub(range(lad.r - 1))
    last = lad.r - 1
    lhs = intersect(product(head.total(1), lad.branch(last, 0)), product(head.total(0), lad.branch(last, 1)))
    rhs = product(head.total(0), lad.branch(last, 0))
    return lhs, rhs


def verify_expansion(f, k: int, mode: str = "global") -> bool:
    lad = _ladder(f)
    return equals(branch_expansion(lad, k), lad.total(k), mode)
