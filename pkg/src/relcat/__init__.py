"""Exact calculus of subspace relations over F_q, the interpolation
category they span, and its specializations to finite-rank matrix
representations."""

from .category import (
    Morphism,
    SYMBOLIC,
    TMode,
    compose,
    decompose_generators,
    dual,
    gram,
    identity,
    mu_morphism,
    orbit_expand,
    orbit_invert,
    permutation,
    phi,
    symmetry,
    t_inv,
    t_iso,
    tensor,
    trace,
)
from .concrete import ConcreteMap, f_r_matrix, independence_check, rel_infty_stability, specialize
from .dsl import eval_formal, parse, parse_program
from .field import Fq, parse_q
from .frobenius import FrobeniusData, check_axioms, hat_f, mu_A_eval, standard_target, term_eval
from .matrix import MatFq, enumerate_subspaces, gaussian_binomial
from .poly import PolyQ, parse_poly
from .relations import (
    Relation,
    generator_relation,
    is_rel_infty,
    knop_diamond,
    product,
    rel_infty_normal_form,
    sigma_relation,
    star,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
