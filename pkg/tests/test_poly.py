from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multigerm import DivisionError, Polynomial, PolySyntaxError, RingMismatch, VariableRing, parse_poly
from multigerm.parse import UnknownVariable

from conftest import R3, polys

TXY = VariableRing(("t", "x", "y"))


def test_parse_branch_coordinate():
    p = parse_poly("y^3 + t*y", TXY)
    assert p.terms == {(0, 0, 3): 1, (1, 0, 1): 1}


def test_parse_zero():
    assert parse_poly("0", TXY).terms == {}


def test_parse_expands_products():
    R = VariableRing(("x", "y"))
    assert parse_poly("(x - y)*(x + y)", R) == parse_poly("x^2 - y^2", R)


def test_parse_primed_names():
    R = VariableRing(("y", "y'"))
    assert str(R("y'^2 - y")) == "y'^2 - y"


@pytest.mark.parametrize("text", ["x y", "2x", "x +", "x^y", "(x", "x $ y", ""])
def test_parse_rejects(text):
    with pytest.raises(PolySyntaxError):
        parse_poly(text, R3)


def test_parse_error_position():
    with pytest.raises(PolySyntaxError) as e:
        parse_poly("x + * y", R3)
    assert e.value.pos == 4


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as e:
        parse_poly("x + w", R3)
    assert e.value.name == "w"


def test_arith_examples():
    x, y = R3.gen("x"), R3.gen("y")
    assert (x + y) * (x - y) == x**2 - y**2
    p = x * y + 3
    assert p + R3.zero() == p
    assert (p - p).terms == {}


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R3.gen("x") + TXY.gen("x")


def test_exact_div_examples():
    R = VariableRing(("t", "y", "y'"))
    assert R("x^2 - y^2".replace("x", "y'")).exact_div(R("y' - y")) == R("y' + y")
    q = R("y'^3 + t*y' - y^3 - t*y").exact_div(R("y' - y"))
    assert q == R("y'^2 + y'*y + y^2 + t")
    with pytest.raises(DivisionError):
        R("t").exact_div(R("y"))


def test_substitute_examples():
    T = VariableRing(("T", "X", "Y", "Z"))
    images = {"T": TXY("t"), "X": TXY("x"), "Y": TXY("y^3 + t*y"), "Z": TXY("x*y + y^5")}
    assert T("Z - T").subs(images, TXY) == TXY("x*y + y^5 - t")
    p = R3("x*y + z^2")
    assert p.subs({v: R3.gen(v) for v in R3.variables}) == p
    assert R3("x + 1").subs({v: R3.zero() for v in R3.variables}) == R3.one()


def test_printing_is_degrevlex_descending():
    assert str(R3("z + x^2 + y*z + 1")) == "x^2 + y*z + z + 1"


def test_rational_coefficients_round_trip():
    p = R3("x/2 - 3*y/4")
    assert p.terms[(1, 0, 0)] == Fraction(1, 2)
    assert R3(str(p)) == p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_exact_div_recovers_factor(a, b):
    if not b.terms:
        return
    assert (a * b).exact_div(b) == a


@settings(max_examples=100, deadline=None)
@given(polys(coeffs=st.fractions(max_denominator=7).filter(lambda q: abs(q) < 20)))
def test_parse_print_round_trip(p):
    assert parse_poly(str(p), R3) == p


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_canonical_printing(a, b):
    assert (a == b) == (str(a) == str(b))


def test_no_zero_coefficients_stored():
    p = Polynomial(R3, {(1, 0, 0): 0, (0, 1, 0): 2})
    assert p.terms == {(0, 1, 0): 2}
