"""Ideals of polynomial rings and their algebra.

Most queries take a ``mode``: ``"global"`` works in the polynomial ring,
``"local"`` in its localization at the origin (germs at 0).  Local
computations use standard bases under ``negdegrevlex``.

The unit ideal has dimension -1 by convention; an ideal that is not
zero-dimensional has colength ``math.inf``.
"""

from __future__ import annotations

import math
import threading
from itertools import combinations, product as cartesian
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, _divides, leading_ideal, reduces_to_zero, standard_basis
from .orders import DEGREVLEX, MonomialOrder, block_order, order_for_mode
from .poly import Polynomial, RingMismatch, VariableRing

INFINITE = math.inf


class Ideal:
    """Ideal of ``ring`` given by generators; bases are computed lazily.

    ``==`` is mathematical equality in the polynomial ring (global mode).
    """

    __slots__ = ("ring", "gens", "_bases", "_lock")

    def __init__(self, ring: VariableRing, gens: Iterable[Polynomial] = ()):
        gens = tuple(g for g in gens if g.terms)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator {g} lives in {g.ring}, not {ring}")
        self.ring = ring
        self.gens = gens
        self._bases: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: VariableRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: VariableRing) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def parse(cls, ring: VariableRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring(t) for t in texts])

    def basis(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        with self._lock:
            gb = self._bases.get(order)
        if gb is None:
            gb = standard_basis(self.gens, order, self.ring)
            with self._lock:
                gb = self._bases.setdefault(order, gb)
        return gb

    def mode_basis(self, mode: str) -> GroebnerBasis:
        return self.basis(order_for_mode(mode))

    def is_unit(self, mode: str = "global") -> bool:
        if mode != "global" and any(g.constant_coeff() for g in self.gens):
            return True
        return self.mode_basis(mode).is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def reduced_generators(self) -> list[Polynomial]:
        """Reduced degrevlex Gröbner basis, integer-normalized."""
        return [g.normalized() for g in self.basis(DEGREVLEX)]

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return product(self, other)

    def __and__(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def __contains__(self, p: Polynomial) -> bool:
        return contains(self, p)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return equals(self, other)

    __hash__ = None

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.gens) + ">"

    def __repr__(self):
        return f"Ideal({self})"


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    gens = []
    seen = set()
    for f in I.gens:
        for g in J.gens:
            h = f * g
            if h not in seen:
                seen.add(h)
                gens.append(h)
    return Ideal(I.ring, gens)


def sum_all(ring: VariableRing, ideals: Iterable[Ideal]) -> Ideal:
    gens: list[Polynomial] = []
    for I in ideals:
        if I.ring != ring:
            raise RingMismatch(f"{I.ring} vs {ring}")
        gens.extend(I.gens)
    return Ideal(ring, gens)


def product_all(ring: VariableRing, ideals: Iterable[Ideal]) -> Ideal:
    result = Ideal.unit(ring)
    for I in ideals:
        result = product(result, I)
    return result


def eliminate(I: Ideal, names: Sequence[str], drop: bool = True) -> Ideal:
    """``I`` intersected with the subring without ``names``.

    With ``drop`` the result lives in the smaller ring, otherwise in ``I.ring``.
    """
    names = list(names)
    if not names:
        return I
    idx = [I.ring.index(v) for v in names]
    gb = I.basis(block_order(idx, DEGREVLEX))
    keep = [g for g in gb if not (g.support_vars() & set(names))]
    if not drop:
        return Ideal(I.ring, keep)
    sub = I.ring.without(names)
    return Ideal(sub, [g.to_ring(sub) for g in keep])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal.zero(I.ring)
    aux = I.ring.fresh("aux")
    big = I.ring.extend([aux])
    t = big.gen(aux)
    gens = [t * g.to_ring(big) for g in I.gens]
    gens += [(1 - t) * g.to_ring(big) for g in J.gens]
    E = eliminate(Ideal(big, gens), [aux])
    return Ideal(I.ring, [g.to_ring(I.ring) for g in E.gens])


def intersect_all(ring: VariableRing, ideals: Iterable[Ideal]) -> Ideal:
    result = Ideal.unit(ring)
    for J in ideals:
        if J.is_unit():
            continue
        result = J if result.is_unit() else intersect(result, J)
    return result


def contains(I: Ideal, p: Polynomial, mode: str = "global") -> bool:
    if p.ring != I.ring:
        raise RingMismatch(f"{p.ring} vs {I.ring}")
    return reduces_to_zero(p, I.mode_basis(mode))


def is_subset(I: Ideal, J: Ideal, mode: str = "global") -> bool:
    """Whether ``I ⊆ J``."""
    _same_ring(I, J)
    if mode != "global" and is_subset(I, J, "global"):
        # global containment implies local containment and is usually cheaper
        return True
    gb = J.mode_basis(mode)
    if gb.is_unit():
        return True
    return all(reduces_to_zero(g, gb) for g in I.gens)


def equals(I: Ideal, J: Ideal, mode: str = "global") -> bool:
    _same_ring(I, J)
    if mode == "global":
        a, b = I.basis(DEGREVLEX), J.basis(DEGREVLEX)
        return a.elements == b.elements
    return is_subset(I, J, mode) and is_subset(J, I, mode)


def radical_membership(I: Ideal, p: Polynomial) -> bool:
    """Whether ``p`` vanishes on V(I): 1 ∈ I + <1 - t*p> with a new variable t."""
    if p.ring != I.ring:
        raise RingMismatch(f"{p.ring} vs {I.ring}")
    aux = I.ring.fresh("rab")
    big = I.ring.extend([aux])
    t = big.gen(aux)
    gens = [g.to_ring(big) for g in I.gens] + [1 - t * p.to_ring(big)]
    return Ideal(big, gens).is_unit()


def same_zero_set(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return all(radical_membership(J, g) for g in I.gens) and all(radical_membership(I, g) for g in J.gens)


def monomial_dimension(lms: Sequence[tuple], nvars: int) -> int:
    """Krull dimension of K[x]/<lms> by maximal independent variable sets."""
    if any(not any(m) for m in lms):
        return -1
    supports = [frozenset(i for i, k in enumerate(m) if k) for m in lms]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def count_standard_monomials(lms: Sequence[tuple], nvars: int):
    """Number of monomials outside <lms>, or ``INFINITE``."""
    if any(not any(m) for m in lms):
        return 0
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in lms if m[i] and all(k == 0 for j, k in enumerate(m) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    count = 0
    for e in cartesian(*(range(b) for b in bounds)):
        if not any(_divides(m, e) for m in lms):
            count += 1
    return count


def dimension(I: Ideal, mode: str = "global") -> int:
    """Krull dimension of the quotient (local: at the origin); -1 for the unit ideal."""
    if I.is_unit(mode):
        return -1
    gb = I.mode_basis(mode)
    return monomial_dimension(leading_ideal(gb), I.ring.nvars)


def colength(I: Ideal, mode: str = "global"):
    """dim_Q of the quotient; ``INFINITE`` unless zero-dimensional."""
    if I.is_unit(mode):
        return 0
    gb = I.mode_basis(mode)
    return count_standard_monomials(leading_ideal(gb), I.ring.nvars)


def pullback(I: Ideal, germ: Sequence[Polynomial], source: VariableRing | None = None) -> Ideal:
    """Substitute the target variables of ``I`` by the coordinates ``germ``."""
    if len(germ) != I.ring.nvars:
        raise ValueError(f"germ has {len(germ)} coordinates, ring {I.ring} needs {I.ring.nvars}")
    if source is None:
        if not germ:
            raise ValueError("cannot infer source ring")
        source = germ[0].ring
    images = dict(zip(I.ring.variables, germ))
    return Ideal(source, [g.subs(images, source) for g in I.gens])
