import random
from fractions import Fraction

import pytest

from trilnd.core.parser import parse_polynomial, tokenize
from trilnd.core.polynomial import Polynomial, VarSet, arith, format_rational, to_rational
from trilnd.exceptions import (
    PolynomialSyntaxError,
    UndeclaredVariableError,
    VarSetMismatchError,
    ZeroPolynomialError,
)

from .conftest import XYZ, P

SG = VarSet(("s", "g"))


def test_varset_rejects_duplicates_and_bad_names():
    with pytest.raises(VarSetMismatchError):
        VarSet(("x", "x"))
    with pytest.raises(VarSetMismatchError):
        VarSet(("x", "1y"))
    with pytest.raises(VarSetMismatchError):
        VarSet(("_x", "y"))
    assert "_tag_0" in VarSet(("x", "_tag_0"))
    assert VarSet.of("x", "y").union(("y", "z")) == XYZ


def test_rationals_are_reduced():
    assert to_rational("6/4") == to_rational(Fraction(3, 2))
    assert format_rational(to_rational("-6/4")) == "-3/2"
    assert format_rational(to_rational(5)) == "5"


def test_arith():
    assert arith(P("x + y"), P("x - y"), "add") == P("2*x")
    assert arith(P("x + y"), P("0"), "mul").is_zero
    expanded = P("(s^2 - 4*g)^2 + 16*s", SG)
    assert expanded == P("s^4 - 8*g*s^2 + 16*g^2 + 16*s", SG)
    with pytest.raises(ValueError):
        arith(P("x"), P("y"), "div")


def test_arith_embeds_smaller_varset():
    a = P("x", VarSet(("x",)))
    assert (a + P("y")) == P("x + y")
    with pytest.raises(VarSetMismatchError):
        a + P("s", SG)


def test_embed_skips_unused_variables():
    x = Polynomial.variable(XYZ, "x")
    XT = VarSet(("x", "t"))
    assert x.embed(XT) == P("x", XT)
    assert P("y*z^2 + 3").embed(VarSet(("a", "z", "y"))) == P("z^2*y + 3", VarSet(("a", "z", "y")))
    assert P("0").embed(XT).is_zero
    with pytest.raises(VarSetMismatchError):
        P("x + y").embed(XT)


def test_rename_keeps_exponents():
    UV = VarSet(("u", "v"))
    AB = VarSet(("a", "b"))
    assert P("u", UV).rename({"u": "a", "v": "b"}) == P("a", AB)
    assert P("u^2*v + v^3", UV).rename({"u": "a", "v": "b"}) == P("a^2*b + b^3", AB)
    assert P("u*v^2", UV).rename({"u": "v", "v": "u"}) == P("v*u^2", VarSet(("v", "u")))
    assert P("u + 1", UV).rename({"u": "x"}, target=XYZ.union(("v",))) == P("x + 1", XYZ.union(("v",)))


def test_substitute():
    assert P("x^2").substitute({"x": P("x + 1")}) == P("x^2 + 2*x + 1")
    shifted = P("s^2 - 2*s + g + 1", SG).substitute({"s": P("s + 1", SG)})
    assert shifted == P("s^2 + g", SG)
    assert P("x").substitute({}) == P("x")


def test_substitute_inverse_round_trip():
    rng = random.Random(7)
    forward = {"z": P("z + x^2 - y"), "y": P("y + 3*x")}
    for _ in range(5):
        p = Polynomial.from_terms(
            XYZ, {(rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-4, 4) for _ in range(4)}
        )
        # x -> x, y -> y + 3x, z -> z + x^2 - y, poi l'inversa in due passi
        image = p.substitute(forward, XYZ)
        back = image.substitute({"z": P("z - x^2 + y")}, XYZ).substitute({"y": P("y - 3*x")}, XYZ)
        assert back == p


def test_ring_axioms_on_random_triples():
    rng = random.Random(11)

    def sample():
        return Polynomial.from_terms(
            XYZ, {(rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3) for _ in range(3)}
        )

    for _ in range(10):
        a, b, c = sample(), sample(), sample()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_degrees_and_coefficients():
    p = P("x^2*z + 3*x*y - 7")
    assert p.total_degree == 3
    assert p.degree("z") == 1
    assert p.degree("y") == 1
    assert p.coefficient("x", 2) == P("z")
    assert p.constant_term() == to_rational(-7)
    assert p.variables_used() == ("x", "y", "z")
    assert Polynomial.zero(XYZ).total_degree == -1
    assert p.homogeneous_part(2) == P("3*x*y")


def test_normalized():
    unit, p = P("-4*x + 6").normalized()
    assert unit == to_rational(-2)
    assert p == P("2*x - 3")
    with pytest.raises(ZeroPolynomialError):
        Polynomial.zero(XYZ).normalized()


def test_diff_and_integrate():
    p = P("x^2*y + 1/2*y^3")
    assert p.diff("y") == P("x^2 + 3/2*y^2")
    assert p.diff("y").integrate("y") == p


def test_format_is_grlex_descending():
    assert P("1 + y + x^2").to_text() == "x^2 + y + 1"
    assert P("-x + 1/3").to_text() == "-x + 1/3"
    assert P("0").to_text() == "0"


def test_format_round_trip():
    for text in ("x^3*y - 2/7*z + 5", "-x*y*z", "y^4 - 8*x*y^2*z + 16"):
        p = P(text)
        assert parse_polynomial(p.to_text(), XYZ) == p


def test_tokenize_positions():
    tokens = tokenize("x +\n  y")
    assert [(t.text, t.line, t.column) for t in tokens[:3]] == [("x", 1, 1), ("+", 1, 3), ("y", 2, 3)]


@pytest.mark.parametrize(
    "text, column",
    [
        ("2x", 2),
        ("x**2", 3),
        ("x^-1", 3),
        ("x^2^3", 4),
        ("(x + y", 7),
    ],
)
def test_syntax_errors_carry_position(text, column):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial(text, XYZ)
    assert info.value.line == 1
    assert info.value.column == column


def test_undeclared_variable():
    with pytest.raises(UndeclaredVariableError) as info:
        parse_polynomial("x + w", XYZ)
    assert info.value.token == "w"
    assert info.value.column == 5


def test_empty_and_zero_denominator():
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("   ", XYZ)
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("1/0", XYZ)


def test_fraction_literal():
    assert P("1/4*(x*z + y^2)^2") == P("x*z + y^2") ** 2 / 4
