"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is a map from exponent tuples to nonzero coefficients,
living in a :class:`VariableRing`.  Coefficients are Python ``int`` when
integral and :class:`fractions.Fraction` otherwise, so arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping

from .orders import DEGREVLEX, MonomialOrder


class RingMismatch(ValueError):
    pass


class DivisionError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class VariableRing:
    """Polynomial ring over Q with an ordered list of named variables.

    Equality is by variable list; ``name`` is only a label.
    """

    variables: tuple[str, ...]
    name: str = field(default="R", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not all(self.variables):
            raise ValueError("variable names must be nonempty")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise KeyError(f"unknown variable {var!r} in ring {self.variables}") from None

    def gen(self, var: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(var)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(v) for v in self.variables]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exp, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): coeff})

    def __call__(self, text: str) -> "Polynomial":
        from .parse import parse_poly

        return parse_poly(text, self)

    def extend(self, names: Iterable[str], name: str | None = None) -> "VariableRing":
        return VariableRing(self.variables + tuple(names), name or self.name)

    def without(self, names: Iterable[str], name: str | None = None) -> "VariableRing":
        drop = set(names)
        return VariableRing(tuple(v for v in self.variables if v not in drop), name or self.name)

    def fresh(self, base: str) -> str:
        """A variable name derived from ``base`` that is not in this ring."""
        cand = base
        while cand in self.variables:
            cand += "'"
        return cand

    def __str__(self):
        return f"{self.name}[{', '.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial.

    >>> R = VariableRing(("x", "y"))
    >>> (R("x") + R("y")) * (R("x") - R("y"))
    Polynomial('x^2 - y^2')
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VariableRing, terms: Mapping[tuple, object] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.nvars
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not match arity {n}")
                    clean[tuple(e)] = _norm(c)
        self.terms: dict[tuple, object] = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def low_degree(self) -> int:
        """Order at the origin (lowest total degree of a term)."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def support_vars(self) -> set[str]:
        used = set()
        for e in self.terms:
            for v, k in zip(self.ring.variables, e):
                if k:
                    used.add(v)
        return used

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        """(exponent, coefficient) of the largest term under ``order``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> tuple:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: MonomialOrder = DEGREVLEX):
        return self.leading_term(order)[1]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = _norm(s)
            else:
                t.pop(e, None)
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Polynomial):
            if not other:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {e: _norm(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return self.exact_div(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / Fraction(other))

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient ``q`` with ``q * other == self``; raises DivisionError otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm_b, lc_b = other.leading_term()
        rem = self
        quot: dict = {}
        while rem.terms:
            lm_r, lc_r = rem.leading_term()
            if any(a < b for a, b in zip(lm_r, lm_b)):
                raise DivisionError(f"{other} does not divide {self}")
            m = tuple(a - b for a, b in zip(lm_r, lm_b))
            c = _norm(Fraction(lc_r) / lc_b)
            quot[m] = c
            rem = rem - other.mul_term(m, c)
        return Polynomial(self.ring, quot)

    def mul_term(self, exp: tuple, coeff=1) -> "Polynomial":
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): _norm(c * coeff) for e, c in self.terms.items()},
        )

    # -- structure -------------------------------------------------------------

    def diff(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return Polynomial._raw(self.ring, t)

    def coeffs_in(self, var: str, base: VariableRing | None = None) -> dict[int, "Polynomial"]:
        """Coefficients as a polynomial in ``var`` over the ring without it."""
        i = self.ring.index(var)
        base = base or self.ring.without([var])
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return {k: Polynomial._raw(base, t) for k, t in out.items()}

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.content())

    def normalized(self) -> "Polynomial":
        """Integer-cleared primitive form with positive degrevlex leading coefficient."""
        if not self.terms:
            return self
        p = self.primitive()
        if p.leading_coeff(DEGREVLEX) < 0:
            p = -p
        return p

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        return self * (Fraction(1) / Fraction(self.leading_coeff(order)))

    def subs(self, images: Mapping[str, "Polynomial"], target: VariableRing | None = None) -> "Polynomial":
        """Substitute variables by polynomials of ``target`` (default: same ring).

        Variables of ``self`` missing from ``images`` are mapped to the
        variable of the same name in ``target``; if there is none, KeyError.
        """
        target = target or self.ring
        imgs = []
        for v in self.ring.variables:
            if v in images:
                img = images[v]
                if not isinstance(img, Polynomial):
                    img = target.const(img)
                elif img.ring != target:
                    raise RingMismatch(f"image of {v} lives in {img.ring}, expected {target}")
                imgs.append(img)
            elif v in target.variables:
                imgs.append(target.gen(v))
            else:
                imgs.append(None)
        used = self.support_vars()
        for v, img in zip(self.ring.variables, imgs):
            if img is None and v in used:
                raise KeyError(f"no image for variable {v!r}")
        powers: list[dict[int, Polynomial]] = [{0: target.one()} for _ in imgs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * imgs[i]
            return cache[k]

        result: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms.items():
                result[te] = result.get(te, 0) + tc
        return Polynomial(target, result)

    def to_ring(self, target: VariableRing) -> "Polynomial":
        """Re-express in ``target`` by variable name."""
        return self.subs({}, target)

    def evaluate(self, point: Mapping[str, object]):
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.ring.variables, e):
                if k:
                    term *= point[v] ** k
            total += term
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    # -- comparison / printing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == ({(0,) * self.ring.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _format_monomial(names, exp) -> str:
    parts = []
    for v, k in zip(names, exp):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    """Canonical text: degrevlex-descending terms, e.g. ``x^2*y - 1/2*y + 3``."""
    if not p.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms(DEGREVLEX)):
        mono = _format_monomial(p.ring.variables, e)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
