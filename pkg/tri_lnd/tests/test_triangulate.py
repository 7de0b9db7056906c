import importlib
from dataclasses import replace

import pytest

from trilnd.core.derivation import Derivation, KernelPair, SemiDecisionBounds, jacobian_derivation
from trilnd.core.factorization import exact_divide
from trilnd.core.polynomial import VarSet
from trilnd.core.triangulate import (
    BasisShapeError,
    DecompositionFail,
    NotCoordinate,
    PrimeCertificate,
    ShapeFail,
    ShapeOK,
    TriangularForm,
    Verdict,
    alternate_form,
    assemble_v,
    companion_derivation,
    complete_system,
    decompose_certificate,
    prime_basis,
    triangulate,
    verify_form,
)
from trilnd.exceptions import ContractViolationError, InvalidInputError

from .conftest import EXAMPLE2_F, XYZ, P

U = VarSet(("u",))
UP = VarSet(("u", "p"))
UV = VarSet(("u", "v"))
UPS = VarSet(("u", "p", "s"))


def _associate(a, b):
    return a.normalized()[1] == b.normalized()[1]


def test_verdict_positivity():
    assert Verdict.RANK1_TRIANGULAR.positive
    assert Verdict.TRIANGULABLE.positive
    assert not Verdict.NOT_TRIANGULABLE.positive
    assert not Verdict.INDETERMINATE.positive


def test_decompose_certificate_quadratic():
    certificate = decompose_certificate(P("s^2 - 2*s + p + 1", UPS), P("u", U))
    assert isinstance(certificate, PrimeCertificate)
    assert certificate.ell_i == P("-1", UP)
    assert certificate.mu_i == P("1", U)
    assert certificate.Q_i == P("v^2", UV)


def test_decompose_certificate_fails_on_quadratic_p():
    outcome = decompose_certificate(P("(s^2 - 4*p)^2 + 16*s", UPS), P("u", U))
    assert isinstance(outcome, DecompositionFail)
    assert outcome.p_degree == 2


def test_decompose_certificate_linear():
    certificate = decompose_certificate(P("s + 2*p + 3", UPS), P("u", U))
    assert certificate.ell_i == P("p + 3", UP)
    assert certificate.Q_i == P("v", UV)


def test_decompose_certificate_vanishing_p_coefficient():
    outcome = decompose_certificate(P("s^2 + u*p", UPS), P("u", U))
    assert isinstance(outcome, DecompositionFail)
    assert outcome.p_degree == 0


def test_decompose_certificate_reduces_modulo_prime():
    # mod u^2 + 1: s^2 + 2*u*s + p - 1 = (s + u)^2 + p
    certificate = decompose_certificate(P("s^2 + 2*u*s + p - 1", UPS), P("u^2 + 1", U), n_i=2)
    assert certificate.ell_i == P("u", UP)
    assert certificate.Q_i == P("v^2", UV)
    assert certificate.n_i == 2


def test_decompose_certificate_requires_monic():
    with pytest.raises(InvalidInputError):
        decompose_certificate(P("2*s + p", UPS), P("u", U))


def test_first_example_is_not_triangulable(example1_kernel):
    report = triangulate(example1_kernel)
    assert report.verdict is Verdict.NOT_TRIANGULABLE
    assert report.rank.rank == 2
    assert report.plinth.c_xyz == P("x")
    assert _associate(report.derivation(report.plinth.s), P("x"))
    assert report.form is None
    assert isinstance(report.primes[0], DecompositionFail)
    assert report.witness.p_degree == 2
    assert report.witness.modulus == P("u", U)
    assert report.witness.modulus_xyz == P("x")


def test_first_example_prime_basis(example1_kernel):
    report = triangulate(example1_kernel)
    shape = prime_basis(report.rank.data, report.plinth.s, P("u", U))
    assert isinstance(shape, ShapeOK)
    # la fetta minimale e' definita a meno del segno: s -> -s
    expected = P("(s^2 - 4*p)^2 + 16*s", UPS)
    assert shape.h in (expected, expected.substitute({"s": P("-s", UPS)}, UPS))
    assert [g.embed(UPS) for g in shape.basis] == [P("u", UPS), shape.h]


def test_second_example_is_triangulable(example2_kernel):
    report = triangulate(example2_kernel)
    assert report.verdict is Verdict.TRIANGULABLE
    form = report.form
    X = report.derivation
    f = P(EXAMPLE2_F)
    assert form.u == f
    assert form.c == P("u", U)
    assert X(form.u).is_zero
    assert X(form.v) == f
    assert form.v == P("z - x*y")
    assert _associate(form.w, P("z - x - y - x*y"))
    assert form.Q == P("v^2", UV)
    assert form.triangular_images() == (P("0", UV), P("u", UV), P("2*v", UV))
    assert verify_form(X, form).ok
    assert set(form.inverse) == {"x", "y", "z"}
    assert "[X, Jac(u, s, .)] = 0: si" in report.diagnostics


def test_second_example_minimal_slice(example2_kernel):
    report = triangulate(example2_kernel)
    s = report.plinth.s
    ratio = exact_divide(report.derivation(s), P(EXAMPLE2_F))
    assert ratio.is_constant and not ratio.is_zero
    # equivalente a z - xy + 1 a meno di unita' e di elementi del nucleo
    difference = s - P("z - x*y + 1").scale(ratio.constant_value())
    assert report.derivation(difference).is_zero


def test_second_example_steps(example2_kernel):
    report = triangulate(example2_kernel)
    data = report.rank.data
    s = report.plinth.s
    shape = prime_basis(data, s, P("u", U))
    assert isinstance(shape, ShapeOK)
    assert shape.h.degree("s") == 2
    certificate = decompose_certificate(shape.h, P("u", U))
    ell, v = assemble_v([certificate], s, data)
    assert ell.varset == UP
    assert report.derivation(v) == P(EXAMPLE2_F)
    completed = complete_system(data, v)
    assert not isinstance(completed, NotCoordinate)
    corrupted = complete_system(data, v + data.mate_xyz)
    assert isinstance(corrupted, NotCoordinate)


def test_alternate_form(example2_kernel):
    report = triangulate(example2_kernel)
    alternate = alternate_form(report.derivation, report, P("1", UP))
    assert isinstance(alternate, TriangularForm)
    assert alternate.v == report.form.v + P(EXAMPLE2_F)
    assert alternate.alt_modulus == P("u", U)
    assert alternate.inverse is not None


def test_alternate_form_needs_rank_two(translation_kernel):
    report = triangulate(translation_kernel)
    with pytest.raises(InvalidInputError):
        alternate_form(report.derivation, report, P("1", UP))


def test_translation_is_rank_one(translation_kernel):
    report = triangulate(translation_kernel)
    assert report.verdict is Verdict.RANK1_TRIANGULAR
    form = report.form
    assert (form.u, form.v, form.w) == (P("x"), P("y"), P("z"))
    assert form.c.is_zero
    assert form.Q == P("v", UV)
    assert form.triangular_images() == (P("0", UV), P("0", UV), P("1", UV))


def test_rank_one_with_prefactor(translation_kernel):
    X = Derivation((P("0"), P("0"), P("x")), XYZ)
    report = triangulate(X, translation_kernel)
    assert report.verdict is Verdict.RANK1_TRIANGULAR
    assert report.prefactor == P("x")
    assert report.prefactor_expression == P("u", UV)
    assert report.form.Q == P("u*v", UV)


def test_rank_two_with_prefactor_in_kernel(example2_kernel):
    f = P(EXAMPLE2_F)
    Y = jacobian_derivation(example2_kernel.f, example2_kernel.g)
    report = triangulate(Y.scaled(f), example2_kernel)
    assert report.verdict is Verdict.TRIANGULABLE
    assert report.prefactor == f
    assert report.form.c == P("u^2", U)


def test_prefactor_outside_u_blocks_triangulation(example2_kernel):
    Y = jacobian_derivation(example2_kernel.f, example2_kernel.g)
    report = triangulate(Y.scaled(example2_kernel.g), example2_kernel)
    assert report.verdict is Verdict.NOT_TRIANGULABLE
    assert report.witness.reason.startswith("prefattore")


def test_verify_form_reports_failures(translation_kernel):
    report = triangulate(translation_kernel)
    broken = replace(report.form, w=P("z^2"))
    check = verify_form(report.derivation, broken)
    assert not check
    assert "X(w) != dQ/dv(u, v)" in check.failures
    assert "z non sta in K[u, v, w]" in check.failures


def test_indeterminate_on_tight_bound(example1_kernel):
    report = triangulate(example1_kernel, bounds=SemiDecisionBounds(nilpotency_bound=1, degree_cap=60))
    assert report.verdict is Verdict.INDETERMINATE
    assert report.nilpotency.tripped == "bound"
    assert report.form is None


def test_contracts():
    with pytest.raises(ContractViolationError):
        triangulate(KernelPair(P("z"), P("x^2 + y^2")))
    with pytest.raises(ContractViolationError):
        triangulate(Derivation((P("0"), P("0"), P("1")), XYZ), KernelPair(P("x"), P("z")))
    with pytest.raises(InvalidInputError):
        triangulate(Derivation((P("0"), P("0"), P("1")), XYZ))


def test_companion_derivation():
    Y, verdict = companion_derivation(P("x"), P("z"))
    assert Y.images == (P("0"), P("-1"), P("0"))
    assert verdict.is_nilpotent


def test_unexpected_basis_shape_carries_raw_basis(example2_kernel, monkeypatch):
    report = triangulate(example2_kernel)
    shape = prime_basis(report.rank.data, report.plinth.s, P("u", U))
    monkeypatch.setattr(importlib.import_module("trilnd.core.triangulate"), "prime_basis", lambda data, s, c_i: ShapeFail(shape.basis))
    with pytest.raises(BasisShapeError) as caught:
        triangulate(example2_kernel)
    assert isinstance(caught.value, ContractViolationError)
    partial = caught.value.report
    assert partial.verdict is Verdict.INVALID_INPUT
    assert partial.form is None
    assert partial.witness.modulus == P("u", U)
    assert partial.witness.modulus_xyz == P(EXAMPLE2_F)
    assert partial.witness.basis == tuple(g.embed(UPS).to_text() for g in shape.basis)
    assert "basis" in caught.value.details
