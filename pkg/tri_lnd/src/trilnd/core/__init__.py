"""
Nucleo algebrico di trilnd.

Polinomi esatti, basi di Groebner, derivazioni, fette minimali, rango e
procedura di triangolazione.
"""

from trilnd.core.automorphism import (
    Automorphism,
    affine,
    compose,
    conjugated_kernel,
    elementary,
    identity,
    random_tame,
    random_triangular_derivation,
    random_triangular_kernel,
)
from trilnd.core.derivation import (
    Derivation,
    KernelPair,
    NilpotencyStatus,
    NilpotencyVerdict,
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
from trilnd.core.factorization import (
    Factorization,
    crt_univariate,
    exact_divide,
    factor_bivariate,
    factor_univariate,
    gcd_poly,
    squarefree_part,
)
from trilnd.core.groebner import (
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    eliminate,
    intersect_subalgebra,
    normal_form,
    subalgebra_membership,
)
from trilnd.core.parser import parse_polynomial
from trilnd.core.plinth import PlinthCertificate, minimize_local_slice, plinth_generator, rewrite_in_kernel
from trilnd.core.polynomial import Polynomial, VarSet, format_polynomial
from trilnd.core.rank import (
    RankTwoData,
    RankVerdict,
    bivariate_coordinate_test,
    classify_rank,
    uni_multivariate_decompose,
)
from trilnd.core.triangulate import (
    TriangularForm,
    TriangulationReport,
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

__all__ = [
    "Automorphism",
    "Derivation",
    "Factorization",
    "GroebnerBasis",
    "KernelPair",
    "MonomialOrder",
    "NilpotencyStatus",
    "NilpotencyVerdict",
    "PlinthCertificate",
    "Polynomial",
    "RankTwoData",
    "RankVerdict",
    "SemiDecisionBounds",
    "TriangularForm",
    "TriangulationReport",
    "VarSet",
    "Verdict",
    "affine",
    "alternate_form",
    "assemble_v",
    "bivariate_coordinate_test",
    "bivariate_jacobian",
    "buchberger",
    "classify_rank",
    "commutator",
    "companion_derivation",
    "complete_system",
    "compose",
    "conjugate",
    "conjugated_kernel",
    "crt_univariate",
    "decompose_certificate",
    "elementary",
    "eliminate",
    "exact_divide",
    "exp_map",
    "factor_bivariate",
    "factor_univariate",
    "format_polynomial",
    "gcd_poly",
    "identity",
    "intersect_subalgebra",
    "irreducible_decomposition",
    "is_locally_nilpotent",
    "jacobian_derivation",
    "local_slice",
    "minimize_local_slice",
    "normal_form",
    "parse_polynomial",
    "plinth_generator",
    "prime_basis",
    "random_tame",
    "random_triangular_derivation",
    "random_triangular_kernel",
    "rewrite_in_kernel",
    "squarefree_part",
    "subalgebra_membership",
    "triangulate",
    "uni_multivariate_decompose",
    "verify_form",
]
