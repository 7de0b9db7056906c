import random

import pytest
from sympy.polys.domains import QQ

from trilnd.core.factorization import (
    crt_univariate,
    divides,
    exact_divide,
    factor_bivariate,
    factor_univariate,
    form_kth_root,
    gcd_many,
    gcd_poly,
    homogeneous_component,
    inverse_mod,
    squarefree_part,
)
from trilnd.core.polynomial import Polynomial, VarSet
from trilnd.exceptions import (
    FactorizationError,
    NonCoprimeModuliError,
    NonExactDivisionError,
    PolynomialDivisionByZero,
    ZeroPolynomialError,
)

from .conftest import EXAMPLE1_G, EXAMPLE2_F, EXAMPLE2_G, P

U = VarSet(("u",))
FG = VarSet(("F", "G"))


def u(text):
    return P(text, U)


def fg(text):
    return P(text, FG)


def test_gcd():
    assert gcd_poly(P("2*x"), P("2*y")) == P("1")
    assert gcd_poly(P("x^2*y"), P("x*y^2")) == P("x*y")
    assert gcd_poly(P("2*x"), P("4*x*y"), keep_content=True) == P("2*x")
    with pytest.raises(ZeroPolynomialError):
        gcd_poly(P("0"), P("0"))


def test_gcd_of_example_partials_divides_x():
    g = P(EXAMPLE1_G)
    common = gcd_poly(g.diff("y"), g.diff("z"))
    assert divides(common, P("x"))


def test_gcd_cofactors():
    a, b = P("(x + y)^2*(z - 1)"), P("(x + y)*(z + 1)")
    g = gcd_poly(a, b)
    assert g == P("x + y")
    assert exact_divide(a, g) * g == a
    assert gcd_poly(exact_divide(a, g), exact_divide(b, g)) == P("1")
    assert gcd_many([a, b, P("0")]) == g


def test_exact_divide():
    assert exact_divide(P("x^2*y"), P("x")) == P("x*y")
    with pytest.raises(NonExactDivisionError):
        exact_divide(P("x"), P("y"))
    with pytest.raises(PolynomialDivisionByZero):
        exact_divide(P("x"), P("0"))


def test_exact_divide_completion_example():
    v = P("z - x*y")
    w = exact_divide(P(EXAMPLE2_G) + v ** 2, P(EXAMPLE2_F))
    # associato di -y - x + z - x*y
    assert w == P("x + y - z + x*y")


def test_factor_univariate():
    assert set(factor_univariate(u("u^2 - 1")).distinct) == {u("u - 1"), u("u + 1")}
    assert factor_univariate(u("u^2 + 1")).factors == ((u("u^2 + 1"), 1),)
    c = u("(u^3 - 2)^2*(u + 3)")
    factorization = factor_univariate(c)
    assert dict(factorization.factors) == {u("u^3 - 2"): 2, u("u + 3"): 1}
    assert factorization.expand() == c
    with pytest.raises(ZeroPolynomialError):
        factor_univariate(u("0"))
    with pytest.raises(FactorizationError):
        factor_univariate(P("x*y"))


def test_factor_bivariate():
    assert set(factor_bivariate(fg("F*G")).distinct) == {fg("F"), fg("G")}
    assert set(factor_bivariate(fg("F^2 - G^2")).distinct) == {fg("F - G"), fg("F + G")}
    c = fg("(F + G^2)^2*G")
    factorization = factor_bivariate(c)
    assert dict(factorization.factors) == {fg("G^2 + F"): 2, fg("G"): 1}
    assert factorization.expand() == c


def test_factorization_unit_reconstructs():
    c = fg("-6*F^2*G + 3*F*G")
    factorization = factor_bivariate(c)
    assert factorization.expand() == c
    for factor in factorization.distinct:
        assert factor.leading_coefficient > 0


def test_squarefree_part():
    assert squarefree_part(u("u^2*(u + 1)")) == u("u^2 + u")
    assert squarefree_part(u("u")) == u("u")
    assert squarefree_part(u("(u^2 + 1)^3")) == u("u^2 + 1")


def test_crt():
    assert crt_univariate([u("1"), u("0")], [u("u"), u("u - 1")]) == u("1 - u")
    assert crt_univariate([u("u^3 + 2")], [u("u^2 + 1")]) == u("-u + 2")
    assert crt_univariate([u("0"), u("0")], [u("u"), u("u + 1")]).is_zero
    with pytest.raises(NonCoprimeModuliError):
        crt_univariate([u("1"), u("0")], [u("u"), u("u^2")])


def test_crt_reduces_to_each_residue():
    residues = [u("2"), u("u"), u("u + 5")]
    moduli = [u("u - 1"), u("u^2 + 1"), u("u + 2")]
    r = crt_univariate(residues, moduli)
    assert r.total_degree < 4
    for residue, modulus in zip(residues, moduli):
        assert (r - residue).remainder(modulus).is_zero


def test_inverse_mod():
    inverse = inverse_mod(u("u + 1"), u("u^2 + 1"))
    assert (inverse * u("u + 1") - 1).remainder(u("u^2 + 1")).is_zero
    with pytest.raises(NonCoprimeModuliError):
        inverse_mod(u("u"), u("u^2"))


def test_homogeneous_forms():
    assert homogeneous_component(P("x^2 + x + 1"), 2) == P("x^2")
    assert form_kth_root(fg("F^2 + 2*F*G + G^2"), 2) == fg("F + G")
    assert form_kth_root(fg("F*G"), 2) is None
    assert form_kth_root(fg("-8*F^3"), 3) == fg("-2*F")
    assert form_kth_root(fg("-F^2"), 2) is None


def _integer_coefficients(p):
    coefficients = [0] * (p.total_degree + 1)
    for (exponent,), value in p.terms().items():
        coefficients[exponent] = int(QQ.numer(value))
    return coefficients


def _evaluate(coefficients, r):
    return sum(c * r**e for e, c in enumerate(coefficients))


def _divisors(n):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _has_integer_root(coefficients):
    if coefficients[0] == 0:
        return True
    return any(_evaluate(coefficients, r) == 0 for d in _divisors(coefficients[0]) for r in (d, -d))


def _has_quadratic_factor(coefficients):
    """Quartica monica: (u^2 + b u + c)(u^2 + d u + e) a coefficienti interi."""
    a0, a1, a2, a3 = coefficients[:4]
    for c in (s * d for d in _divisors(a0) for s in (1, -1)):
        e = a0 // c
        if e != c:
            if (a1 - c * a3) % (e - c):
                continue
            candidates = [(a1 - c * a3) // (e - c)]
        else:
            candidates = range(-abs(a3) - abs(a2) - 2 * abs(c) - 1, abs(a3) + abs(a2) + 2 * abs(c) + 2)
        for b in candidates:
            d = a3 - b
            if c + b * d + e == a2 and b * e + c * d == a1:
                return True
    return False


def _brute_force_irreducible(p):
    coefficients = _integer_coefficients(p)
    degree = len(coefficients) - 1
    if degree == 1:
        return True
    if _has_integer_root(coefficients):
        return False
    return degree < 4 or not _has_quadratic_factor(coefficients)


def _random_monic(rng, degree):
    terms = {(e,): rng.randint(-4, 4) for e in range(degree)}
    terms[(degree,)] = 1
    return Polynomial.from_terms(U, terms)


def test_factors_pass_brute_force_irreducibility():
    rng = random.Random(5)
    for _ in range(200):
        if rng.random() < 0.5:
            c = _random_monic(rng, rng.randint(1, 2)) * _random_monic(rng, rng.randint(1, 2))
        else:
            c = _random_monic(rng, rng.randint(2, 4))
        factorization = factor_univariate(c)
        assert factorization.expand() == c
        for factor in factorization.distinct:
            assert factor.leading_coefficient == 1
            assert _brute_force_irreducible(factor), f"{factor} riducibile in {c}"
        if _brute_force_irreducible(c):
            assert factorization.factors == ((c, 1),)
