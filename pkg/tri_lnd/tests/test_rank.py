import pytest

from trilnd.core.derivation import SemiDecisionBounds, jacobian_derivation
from trilnd.core.plinth import KERNEL_VARSET, PlinthCertificate, plinth_generator
from trilnd.core.polynomial import VarSet
from trilnd.core.rank import (
    CoordinateStatus,
    bivariate_coordinate_test,
    classify_rank,
    uni_multivariate_decompose,
)
from trilnd.exceptions import InvalidInputError

from .conftest import EXAMPLE1_G, EXAMPLE2_F, EXAMPLE2_G, P

U = VarSet(("u",))


def F(text):
    return P(text, KERNEL_VARSET)


def u(text):
    return P(text, U)


@pytest.mark.parametrize(
    "C, ell, inner, k",
    [
        ("F", "u", "F", 1),
        ("(F + G)^2 + 1", "u^2 + 1", "F + G", 2),
        ("(F + G^2)^3", "u^3", "G^2 + F", 3),
        ("2*F + 4*G + 3", "2*u + 3", "F + 2*G", 1),
        ("-(G - 1)^2", "-u^2 + 2*u - 1", "G", 2),
    ],
)
def test_uni_multivariate_decompose(C, ell, inner, k):
    decomposition = uni_multivariate_decompose(F(C))
    assert decomposition.ell == u(ell)
    assert decomposition.U == F(inner)
    assert decomposition.k == k
    assert decomposition.ell.substitute({"u": decomposition.U}, KERNEL_VARSET) == F(C)


def test_decompose_rejects_constants():
    with pytest.raises(InvalidInputError):
        uni_multivariate_decompose(F("5"))


def test_coordinate_test():
    coordinate = bivariate_coordinate_test(F("F + G^2"))
    assert coordinate.status is CoordinateStatus.COORDINATE
    assert coordinate.mate == F("G")
    assert bivariate_coordinate_test(F("F")).mate == F("G")
    assert bivariate_coordinate_test(F("G")).mate == F("F")


@pytest.mark.parametrize("U", ["F^2 + G^2", "F*G", "F^2", "F^2 - G^2"])
def test_not_coordinates(U):
    test = bivariate_coordinate_test(F(U))
    assert test.status is CoordinateStatus.NOT_COORDINATE
    assert test.reason


def test_coordinate_test_indeterminate_on_tight_bounds():
    test = bivariate_coordinate_test(F("F + G^5"), SemiDecisionBounds(nilpotency_bound=2, degree_cap=60))
    assert test.status is CoordinateStatus.INDETERMINATE


def test_rank_one(translation_kernel):
    X = jacobian_derivation(translation_kernel.f, translation_kernel.g)
    verdict = classify_rank(X, plinth_generator(X, translation_kernel))
    assert verdict.rank == 1
    assert X(verdict.slice) == P("1")


def test_rank_two_first_example(example1_kernel):
    X = jacobian_derivation(P("x"), P(EXAMPLE1_G))
    verdict = classify_rank(X, plinth_generator(X, example1_kernel))
    assert verdict.rank == 2
    assert verdict.data.u_xyz == P("x")
    assert verdict.data.ell == u("u")
    assert verdict.data.mate_xyz == P(EXAMPLE1_G)
    assert verdict.data.squarefree == u("u")


def test_rank_two_second_example(example2_kernel):
    X = jacobian_derivation(P(EXAMPLE2_F), P(EXAMPLE2_G))
    verdict = classify_rank(X, plinth_generator(X, example2_kernel))
    assert verdict.rank == 2
    assert verdict.data.u_xyz == P(EXAMPLE2_F)
    assert verdict.data.mate_xyz == P(EXAMPLE2_G)


def test_rank_three_from_non_coordinate_plinth(translation_kernel):
    X = jacobian_derivation(translation_kernel.f, translation_kernel.g)
    certificate = PlinthCertificate(
        s=P("x*y*z"), c_xyz=P("x*y"), c_FG=F("F*G"), kernel=translation_kernel
    )
    verdict = classify_rank(X, certificate)
    assert verdict.rank == 3
    assert verdict.decomposition.U == F("F*G")
    assert not verdict.indeterminate
