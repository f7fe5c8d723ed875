"""Finite p-group actions on polynomial rings over GF(p^s): traces, points,
erasure, invariant rings and the elementary-abelian basic algebras."""

from .constructions import (
    BasicBAlpha, DkAlgebra, MhoAlgebra, build_balpha, build_big_theta, build_cp2_example,
    build_dk, build_L, build_mho, build_psi, build_theta,
)
from .errors import (
    ActionError, FieldError, FieldMismatchError, GroupError, ModgalError, NotAPointError,
    ParseError, RingMismatchError, SingularError,
)
from .ffield import (
    FieldCtx, FieldElement, MooreSystem, field_create, fp_independent, frobenius,
    linearized_eval, moore_det, moore_inverse, parse_field_spec,
)
from .galgebra import (
    AlgebraMorphism, GAlgebra, PointCert, TriangularCert, find_point, is_reflexive_point,
    is_triangular, make_galgebra, morphism_from_point, same_side_tensor, tensor,
)
from .groebner import GBasis, eliminate, groebner, normal_form, subalgebra_membership
from .invariants import (
    ErasureCert, InvariantBasis, artin_schreier_gens, erasure_lambdas, freeness_on_points,
    invariant_ring_elimination, invariants_bruteforce, point_basis_free,
)
from .pgroup import GroupTable, group_cyclic, group_elemab, group_product, group_validate
from .polyring import Polynomial, Ring, VarMap, apply_map, compose_maps, poly_arith

__version__ = "0.1.0"
