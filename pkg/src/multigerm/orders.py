"""Monomial orderings as sort keys on exponent tuples.

``order.key(e1) > order.key(e2)`` means ``e1`` is the larger monomial.
Global orders have 1 as the smallest monomial; the local order
``negdegrevlex`` has 1 as the largest.
"""

from __future__ import annotations

from dataclasses import dataclass


def _degrevlex_key(e):
    return (sum(e), tuple(-k for k in reversed(e)))


def _lex_key(e):
    return e


def _negdegrevlex_key(e):
    return (-sum(e), tuple(-k for k in reversed(e)))


_SIMPLE = {
    "degrevlex": _degrevlex_key,
    "lex": _lex_key,
    "negdegrevlex": _negdegrevlex_key,
}


@dataclass(frozen=True)
class MonomialOrder:
    """One of degrevlex, lex, negdegrevlex, or a block elimination order.

    A block order compares the exponents at ``elim`` (variable positions)
    by degrevlex first and breaks ties with ``inner`` on the rest.
    """

    kind: str
    elim: tuple[int, ...] = ()
    inner: "MonomialOrder | None" = None

    def __post_init__(self):
        if self.kind in _SIMPLE:
            key = _SIMPLE[self.kind]
        elif self.kind == "block":
            if self.inner is None or not self.inner.is_global:
                raise ValueError("block order needs a global inner order")
            elim = tuple(sorted(self.elim))
            object.__setattr__(self, "elim", elim)
            inner_key = self.inner.key
            es = set(elim)

            def key(e, elim=elim, es=es, inner_key=inner_key):
                a = tuple(e[i] for i in elim)
                b = tuple(k for i, k in enumerate(e) if i not in es)
                return (_degrevlex_key(a), inner_key(b))

        else:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "key", key)

    @property
    def is_global(self) -> bool:
        return self.kind != "negdegrevlex"

    @property
    def is_local(self) -> bool:
        return self.kind == "negdegrevlex"

    def __str__(self):
        if self.kind == "block":
            return f"block({list(self.elim)}, {self.inner})"
        return self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")
NEGDEGREVLEX = MonomialOrder("negdegrevlex")


def block_order(elim, inner: MonomialOrder = DEGREVLEX) -> MonomialOrder:
    return MonomialOrder("block", tuple(elim), inner)


def order_for_mode(mode: str) -> MonomialOrder:
    if mode == "global":
        return DEGREVLEX
    if mode in ("local", "local-at-origin"):
        return NEGDEGREVLEX
    raise ValueError(f"unknown mode {mode!r}; expected 'global' or 'local'")
