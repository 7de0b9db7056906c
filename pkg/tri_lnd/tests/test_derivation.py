import random

import pytest

from trilnd.core.automorphism import random_tame, random_triangular_derivation
from trilnd.core.derivation import (
    Derivation,
    KernelPair,
    NilpotencyStatus,
    SemiDecisionBounds,
    bivariate_jacobian,
    commutator,
    conjugate,
    exp_map,
    irreducible_decomposition,
    is_locally_nilpotent,
    jacobian_derivation,
    local_slice,
)
from trilnd.core.factorization import divides, gcd_many
from trilnd.core.polynomial import Polynomial, VarSet, to_rational
from trilnd.exceptions import ContractViolationError, InvalidInputError, VarSetMismatchError

from .conftest import EXAMPLE1_G, EXAMPLE2_F, EXAMPLE2_G, XYZ, P


def D(x, y, z):
    return Derivation((P(x), P(y), P(z)), XYZ)


def test_jacobian_of_coordinates_is_translation():
    X = jacobian_derivation(P("x"), P("y"))
    assert X.images == (P("0"), P("0"), P("1"))


def test_jacobian_first_example():
    g = P(EXAMPLE1_G)
    X = jacobian_derivation(P("x"), g)
    assert X.image("x").is_zero
    assert X.image("y") == -g.diff("z")
    assert X.image("z") == g.diff("y")
    assert X(g).is_zero


def test_jacobian_rejects_dependent_pair():
    with pytest.raises(InvalidInputError):
        jacobian_derivation(P("x"), P("x^2 + 1"))
    with pytest.raises(VarSetMismatchError):
        jacobian_derivation(P("F", VarSet(("F", "G"))), P("G", VarSet(("F", "G"))))


def test_zero_derivation_rejected():
    with pytest.raises(InvalidInputError):
        D("0", "0", "0")


def test_apply_and_iterate():
    X = D("0", "0", "1")
    assert X(P("z^2")) == P("2*z")
    assert X(P("x*y")).is_zero
    assert X.iterate(P("z^3"), 2) == P("6*z")
    shear = D("0", "x", "y")
    assert shear.iterate(P("z"), 2) == P("x")


def test_kernel_check():
    X = D("0", "0", "1")
    KernelPair(P("x"), P("y")).check(X)
    with pytest.raises(ContractViolationError):
        KernelPair(P("x"), P("z")).check(X)


def test_nilpotency_counts():
    verdict = is_locally_nilpotent(D("0", "0", "1"))
    assert verdict.status is NilpotencyStatus.LOCALLY_NILPOTENT
    assert verdict.iteration_counts == (1, 1, 2)
    assert verdict.is_nilpotent and not verdict.refuted


def test_nilpotency_of_examples():
    for f, g in (("x", EXAMPLE1_G), (EXAMPLE2_F, EXAMPLE2_G)):
        assert is_locally_nilpotent(jacobian_derivation(P(f), P(g))).is_nilpotent


def test_cycle_refutes_nilpotency():
    verdict = is_locally_nilpotent(D("y", "x", "0"))
    assert verdict.refuted
    assert verdict.cycle.variable == "x"
    assert (verdict.cycle.k, verdict.cycle.j) == (3, 1)
    assert verdict.cycle.ratio == to_rational(1)
    euler = is_locally_nilpotent(D("x", "0", "0"))
    assert euler.tripped == "cycle"


def test_degree_breaker_and_bound():
    X = D("0", "0", "z^2")
    tripped = is_locally_nilpotent(X, bound=200, degree_cap=1)
    assert tripped.status is NilpotencyStatus.EXCEEDED_BOUND
    assert tripped.tripped == "degree_cap"
    assert not tripped.refuted
    exhausted = is_locally_nilpotent(X, bound=2, degree_cap=60)
    assert exhausted.tripped == "bound"
    assert exhausted.iteration_counts == (1, 1, None)


def test_bounds_validation():
    with pytest.raises(ValueError):
        SemiDecisionBounds(0, 60)
    assert SemiDecisionBounds().as_dict() == {"nilpotency_bound": 200, "degree_cap": 60}


def test_irreducible_decomposition():
    c0, Y = irreducible_decomposition(D("0", "x^2", "x"))
    assert c0 == P("x")
    assert Y.images == (P("0"), P("x"), P("1"))
    c0, Y = irreducible_decomposition(D("0", "2*x", "2*y"))
    assert c0 == P("1")
    assert Y.images == (P("0"), P("2*x"), P("2*y"))


def test_local_slice():
    assert local_slice(D("0", "0", "1")) == P("z")
    X = D("0", "x", "y")
    s = local_slice(X)
    assert X(s) == P("x") and X(X(s)).is_zero
    with pytest.raises(ContractViolationError):
        local_slice(D("y", "x", "0"), bound=10)


def test_commutator():
    assert all(image.is_zero for image in commutator(D("0", "0", "1"), D("0", "1", "0")))
    assert commutator(D("0", "0", "1"), D("0", "z", "0")) == (P("0"), P("1"), P("0"))


def test_conjugate():
    X = D("0", "0", "1")
    variables = (P("x"), P("y"), P("z"))
    assert conjugate(X, variables, variables).images == X.images
    sigma = (P("x"), P("y"), P("z + x^2"))
    inverse = (P("x"), P("y"), P("z - x^2"))
    assert conjugate(X, sigma, inverse).images == X.images
    shear = (P("x"), P("y + z^2"), P("z"))
    unshear = (P("x"), P("y - z^2"), P("z"))
    assert conjugate(X, shear, unshear).images == (P("0"), P("-2*z"), P("1"))
    with pytest.raises(ContractViolationError):
        conjugate(X, sigma, sigma)


def test_exp_map():
    assert exp_map(D("0", "0", "1"), P("z")) == P("z + 1")
    assert exp_map(D("0", "x", "y"), P("z"), t=2) == P("z + 2*y + 2*x")
    with pytest.raises(ContractViolationError):
        exp_map(D("y", "x", "0"), P("x"), cap=10)


def test_bivariate_jacobian():
    FG = VarSet(("F", "G"))
    D_U = bivariate_jacobian(P("F + G^2", FG))
    assert D_U.images == (P("2*G", FG), P("-1", FG))
    assert D_U(P("F + G^2", FG)).is_zero


def _random_polynomial(rng, degree=2, terms=3):
    return Polynomial.from_terms(
        XYZ,
        {
            tuple(rng.randint(0, degree) for _ in range(3)): rng.choice([c for c in range(-4, 5) if c])
            for _ in range(terms)
        },
    )


def _random_case(seed):
    rng = random.Random(seed)
    return rng, random_triangular_derivation(XYZ, rng, degree=2, height=3)


@pytest.mark.parametrize("seed", range(8))
def test_leibniz_rule(seed):
    rng, X = _random_case(seed)
    for _ in range(3):
        a, b = _random_polynomial(rng), _random_polynomial(rng)
        assert X(a * b) == a * X(b) + b * X(a)
        assert X(a + b) == X(a) + X(b)


@pytest.mark.parametrize("seed", range(8))
def test_exp_map_is_ring_automorphism(seed):
    rng, X = _random_case(seed)
    images = {name: exp_map(X, P(name)) for name in XYZ}
    for _ in range(2):
        a, b = _random_polynomial(rng), _random_polynomial(rng)
        assert exp_map(X, a * b) == exp_map(X, a) * exp_map(X, b)
        assert exp_map(X, a) == a.substitute(images, XYZ)
    for name in XYZ:
        assert exp_map(X, exp_map(X, P(name), t=-1)) == P(name)


@pytest.mark.parametrize("seed", range(6))
def test_conjugate_round_trip(seed):
    rng, X = _random_case(seed)
    sigma = random_tame(XYZ, rng, length=2, height=2).check()
    conjugated = conjugate(X, sigma.images, sigma.inverse_images)
    assert conjugate(conjugated, sigma.inverse_images, sigma.images).images == X.images
    assert sigma.conjugate(X).images == conjugated.images


@pytest.mark.parametrize("seed", range(8))
def test_irreducible_decomposition_reassembles(seed):
    rng, T = _random_case(seed)
    factor = P(rng.choice(["x", "x^2 + 1", "2*x - 3", "x*(x + 2)"]))
    X = T.scaled(factor)
    c0, Y = irreducible_decomposition(X)
    assert divides(factor, c0)
    assert Y.scaled(c0).images == X.images
    assert gcd_many(Y.images).is_constant
