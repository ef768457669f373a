"""The specialization functor as the ground-truth oracle."""

import random
from fractions import Fraction

import pytest

from relcat import category as cat
from relcat.category import Morphism
from relcat.concrete import (
    ConcreteMap,
    action_matrix,
    code_tuple,
    concrete_compose,
    concrete_tensor,
    embed_code,
    f_r_matrix,
    hom_dimension,
    independence_check,
    rel_infty_stability,
    specialize,
    tuple_code,
)
from relcat.errors import ArityMismatch, NotRelInfty
from relcat.field import Fq
from relcat.matrix import MatFq, enumerate_subspaces
from relcat.qmat import QMat
from relcat.relations import (
    Relation,
    product,
    random_invertible,
    random_rel_infty,
    random_relation,
    star,
)

F2, F3 = Fq(2), Fq(3)


def test_codec_round_trip():
    rng = random.Random(40)
    for _ in range(100):
        F = rng.choice([F2, F3])
        n, count = rng.randrange(1, 3), rng.randrange(4)
        code = rng.randrange(F.q ** (n * count))
        assert tuple_code(F, n, code_tuple(F, n, code, count)) == code


def test_all_ones_map():
    rel = Relation.zero_space(F2, 1, 1)
    assert f_r_matrix(rel, 1).mat.to_dense() == [[1, 1], [1, 1]]


def test_zero_vector_inclusion():
    rel = Relation(F2, 0, 1, MatFq.identity(F2, 1))
    assert f_r_matrix(rel, 1).mat.to_dense() == [[1], [0]]


def test_kill_nonzero_then_sum():
    rel = Relation.from_rows(F2, 1, 1, [[1, 0]])
    # the zero input goes to the sum of everything, others to 0
    assert f_r_matrix(rel, 1).mat.to_dense() == [[1, 0], [1, 0]]


def test_scalar_multiple_map():
    # the graph of multiplication by b acts as v -> b v
    for b in F3.elements():
        rel = Relation.from_rows(F3, 1, 1, [[F3.neg(b), 1]])
        mat = f_r_matrix(rel, 1).mat
        expected = QMat(3, 3, {(F3.mul(b, v), v): 1 for v in range(3)})
        assert mat == expected


def test_composition_oracle_random():
    rng = random.Random(41)
    done = 0
    while done < 200:
        F = rng.choice([F2, F3])
        n = rng.choice([1, 2])
        s, k, l = (rng.randrange(4) for _ in range(3))
        if max(F.q ** (n * (s + k)), F.q ** (n * (k + l)), F.q ** (n * (s + l))) > 2**12:
            continue
        r = random_relation(rng, F, s, k)
        t = random_relation(rng, F, k, l)
        sr, d = star(r, t)
        lhs = f_r_matrix(t, n).mat @ f_r_matrix(r, n).mat
        assert lhs == f_r_matrix(sr, n).mat.scale(F.q ** (n * d))
        done += 1


def test_monoidality_oracle_random():
    rng = random.Random(42)
    for _ in range(150):
        F = rng.choice([F2, F3])
        r1 = random_relation(rng, F, rng.randrange(3), rng.randrange(3))
        r2 = random_relation(rng, F, rng.randrange(3), rng.randrange(3))
        lhs = f_r_matrix(product(r1, r2), 1).mat
        assert lhs == f_r_matrix(r1, 1).mat.kron(f_r_matrix(r2, 1).mat)


def test_specialize_sums_terms():
    # 2 * all-ones at n=1 equals the square of the all-ones matrix
    rel = Relation.zero_space(F2, 1, 1)
    f = Morphism.from_relation(rel)
    square = cat.compose(f, f)
    got = specialize(square, 1).mat
    assert got.to_dense() == [[2, 2], [2, 2]]


def test_specialize_identity():
    ident = cat.identity(F2, 2)
    assert specialize(ident, 1).mat == QMat.identity(4)


def test_specialize_functorial():
    rng = random.Random(43)
    for _ in range(60):
        F = rng.choice([F2, F3])
        n = 1
        s, k, l = (rng.randrange(3) for _ in range(3))
        f = Morphism.from_relation(random_relation(rng, F, k, l))
        g = Morphism.from_relation(random_relation(rng, F, s, k))
        lhs = specialize(cat.compose(f, g), n)
        rhs = concrete_compose(specialize(f, n), specialize(g, n))
        assert lhs == rhs
        h = Morphism.from_relation(random_relation(rng, F, rng.randrange(3), rng.randrange(3)))
        assert specialize(cat.tensor(f, h), n) == concrete_tensor(specialize(f, n), specialize(h, n))


def test_specialize_evaluates_t():
    loop = cat.compose(cat.generator(F2, "eps*"), cat.generator(F2, "eps"))
    for n in (1, 2):
        got = specialize(loop, n).mat
        assert got.to_dense() == [[2**n]]


def test_independence_basis_and_dependence():
    assert independence_check(F2, 1, 1, 2) == (5, True)
    rank, is_basis = independence_check(F2, 1, 1, 1)
    assert rank < 5 and not is_basis
    assert independence_check(F2, 0, 0, 1) == (1, True)
    assert hom_dimension(F2, 1, 1) == 5


def test_faithful_at_large_rank():
    # rank n >= s + k separates formal morphisms
    rng = random.Random(44)
    for _ in range(20):
        f = Morphism.from_relation(random_relation(rng, F2, 1, 1))
        g = Morphism.from_relation(random_relation(rng, F2, 1, 1))
        if f != g:
            assert specialize(f, 2) != specialize(g, 2)


def test_equivariance_spot_check():
    rng = random.Random(45)
    for _ in range(20):
        F = rng.choice([F2, F3])
        n = 2 if F is F2 else 1
        rel = random_relation(rng, F, rng.randrange(3), rng.randrange(2))
        g = random_invertible(rng, F, n)
        mat = f_r_matrix(rel, n).mat
        act_in = action_matrix(g, rel.s, n)
        act_out = action_matrix(g, rel.k, n)
        assert act_out @ mat == mat @ act_in


def test_rel_infty_stability_identity():
    ident = Relation.from_rows(F2, 1, 1, [[1, 1]])
    assert rel_infty_stability(ident, 1)
    assert rel_infty_stability(ident, 2)


def test_rel_infty_stability_rejects_non_members():
    with pytest.raises(NotRelInfty):
        rel_infty_stability(Relation.zero_space(F2, 1, 1), 1)


def test_rel_infty_stability_random():
    rng = random.Random(46)
    for _ in range(100):
        n = rng.choice([1, 2])
        s, k = rng.randrange(3), rng.randrange(3)
        if F2.q ** ((n + 1) * (s + k)) > 2**12:
            continue
        rel = random_rel_infty(rng, F2, s, k)
        assert rel_infty_stability(rel, n)


def test_orbit_matrices():
    # orbit-basis matrices at rank >= s+k live on disjoint index sets and
    # sum back to the plain basis matrices
    n = 2
    rels = [Relation(F2, 1, 1, b) for b in enumerate_subspaces(F2, 2)]
    supports = []
    orbit_mats = {}
    for rel in rels:
        morphism = cat.orbit_invert({rel: Fraction(1)}, F2, 1, 1)
        mat = specialize(morphism, n).mat
        orbit_mats[rel] = mat
        supports.append(set(mat.data))
    for i in range(len(rels)):
        for j in range(i + 1, len(rels)):
            assert not (supports[i] & supports[j])
    for rel in rels:
        recovered = specialize(cat.orbit_invert(cat.orbit_expand(rel), F2, 1, 1), n)
        assert recovered.mat == f_r_matrix(rel, n).mat


def test_embed_code():
    # embedding pads each vector with a trailing zero coordinate
    assert embed_code(F2, 1, 0b11, 2) == 0b0101


def test_concrete_shape_checks():
    a = f_r_matrix(Relation.zero_space(F2, 1, 1), 1)
    b = f_r_matrix(Relation.zero_space(F2, 0, 1), 1)
    with pytest.raises(ArityMismatch):
        concrete_compose(b, a)
    with pytest.raises(ArityMismatch):
        ConcreteMap(F2, 1, 1, 1, QMat.identity(3))
