import itertools

import pytest
from hypothesis import given

from dgfunctors.base import VObject, unit_object
from dgfunctors.catalog import a2_category, mutated_a2, simple_functor
from dgfunctors.enriched import (VFunctor, VNat, check_functor_axioms, check_vnat, identity_nat,
                                 naturality_residual, precompose_nat, representable,
                                 unit_category)
from dgfunctors.errors import AxiomError
from dgfunctors.functors import (coend_check, coend_functor, end_presentation,
                                 factor_through_cokernel, factor_through_kernel, hom_end, oslash,
                                 oslash_adjunction, oslash_assoc, oslash_map, oslash_unit,
                                 pointwise_cokernel, pointwise_kernel, pointwise_sum, yoneda_check,
                                 evaluate, zero_functor)
from dgfunctors.linalg import GF, QQ, ZZ, Matrix
from dgfunctors.sampling import random_category, random_functor, random_matrix, random_nat

from strategies import fields, rings, rngs

F2, F3 = GF(2), GF(3)


def a2_inclusion(ring):
    """``hom(b, -) -> hom(a, -)``, precomposition with the arrow ``a -> b``."""
    return precompose_nat(a2_category(ring), "a", "b", Matrix(ring, [[1]]))


# --- ends -----------------------------------------------------------------

def test_end_over_a_point():
    C = unit_category(QQ)
    R = representable(C, "*")
    X, Y = oslash(R, VObject(QQ, 2)), oslash(R, VObject(QQ, 3))
    assert hom_end(X, Y).rank == 6


def test_end_from_rep_b_to_simple_a_vanishes():
    C = a2_category(ZZ)
    assert hom_end(representable(C, "b"), simple_functor(C, "a")).rank == 0


@given(fields, rngs)
def test_end_of_nonzero_functor_contains_identity(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    X = random_functor(rng, C)
    end = end_presentation(X, X)
    if any(X.rank(c) for c in C.objects):
        assert end.rank >= 1
        assert end.nat_to_element(identity_nat(X)) is not None


@given(rings, rngs)
def test_end_basis_is_natural_and_round_trips(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    X, Y = random_functor(rng, C), random_functor(rng, C)
    end = end_presentation(X, Y)
    for k, alpha in enumerate(end.basis()):
        assert check_vnat(alpha).ok
        e = [0] * end.rank
        e[k] = 1
        assert list(end.nat_to_element(alpha)) == e


def test_non_natural_family_rejected():
    C = a2_category(QQ)
    R = representable(C, "a")
    end = end_presentation(R, R)
    with pytest.raises(ValueError):
        end.nat_to_element(VNat(R, R, {"a": Matrix(QQ, [[2]]), "b": Matrix(QQ, [[1]])}))


def _count_natural_f2(X, Y):
    C = X.source
    shapes = [(Y.rank(c), X.rank(c)) for c in C.objects]
    total = sum(r * s for r, s in shapes)
    count = 0
    for bits in itertools.product((0, 1), repeat=total):
        comps, pos = {}, 0
        for c, (r, s) in zip(C.objects, shapes):
            comps[c] = Matrix(F2, [[bits[pos + i * s + j] for j in range(s)] for i in range(r)], r, s)
            pos += r * s
        alpha = VNat(X, Y, comps)
        count += all(naturality_residual(alpha, a, b).is_zero()
                     for a in C.objects for b in C.objects)
    return count


@given(rngs)
def test_end_counts_natural_transformations_over_f2(rng):
    C = random_category(rng, F2, n_objects=3)
    X, Y = random_functor(rng, C), random_functor(rng, C)
    if sum(X.rank(c) * Y.rank(c) for c in C.objects) > 8:
        return
    assert _count_natural_f2(X, Y) == 2 ** hom_end(X, Y).rank


# --- the action of V ------------------------------------------------------

def test_oslash_examples():
    C = a2_category(QQ)
    R = representable(C, "a")
    assert oslash_unit(R).component("a") == Matrix.identity(QQ, 1)
    assert check_vnat(oslash_unit(R)).ok
    two = oslash(R, VObject(QQ, 2))
    assert (two.rank("a"), two.rank("b")) == (2, 2)
    assert check_functor_axioms(two).ok
    zero = oslash(R, VObject(QQ, 0))
    assert all(zero.rank(c) == 0 for c in C.objects)


@given(rings, rngs)
def test_oslash_associativity_is_a_natural_iso(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    X = random_functor(rng, C)
    A, B = VObject(ring, rng.randint(0, 2)), VObject(ring, rng.randint(0, 2))
    a = oslash_assoc(X, A, B)
    assert check_vnat(a).ok
    for c in C.objects:
        assert a.component(c) == Matrix.identity(ring, a.component(c).nrows)


@given(rings, rngs)
def test_oslash_is_functorial(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    X, Y = random_functor(rng, C), random_functor(rng, C)
    alpha = random_nat(rng, X, Y)
    g = random_matrix(rng, ring, 2, 1)
    assert check_vnat(oslash_map(alpha, g)).ok


@given(rings, rngs)
def test_oslash_adjunction(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    X, Y = random_functor(rng, C), random_functor(rng, C)
    w = oslash_adjunction(X, VObject(ring, rng.randint(0, 2)), Y)
    assert w.report.ok, w.report.render()


# --- evaluation and pointwise constructions -------------------------------

def test_evaluation_of_representable():
    C = a2_category(QQ)
    for c in C.objects:
        assert evaluate(representable(C, c), c).rank == C.rank(c, c)


@given(rings, rngs)
def test_sums_evaluate_pointwise(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    X, Y = random_functor(rng, C), random_functor(rng, C)
    S = pointwise_sum([X, Y])
    assert check_functor_axioms(S.total).ok
    for c in C.objects:
        assert evaluate(S.total, c).rank == X.rank(c) + Y.rank(c)
    for inj, proj in zip(S.injections, S.projections):
        assert check_vnat(inj).ok and check_vnat(proj).ok
        assert proj @ inj == identity_nat(inj.source)
    assert pointwise_sum([X, zero_functor(C)]).total == X


def test_kernel_of_identity_is_zero():
    C = a2_category(QQ)
    R = representable(C, "a")
    K = pointwise_kernel(identity_nat(R)).kernel
    assert all(K.rank(c) == 0 for c in C.objects)


def test_cokernel_of_inclusion_is_simple():
    for ring in (ZZ, QQ, F2):
        cone = pointwise_cokernel(a2_inclusion(ring))
        assert cone.cokernel == simple_functor(a2_category(ring), "a")


def test_kernel_on_a2_evaluates_pointwise():
    C = a2_category(QQ)
    # the projection hom(a,-) -> simple(a) has kernel hom(b,-)
    proj = pointwise_cokernel(a2_inclusion(QQ)).projection
    cone = pointwise_kernel(proj)
    for c in C.objects:
        assert cone.kernel.rank(c) == representable(C, "b").rank(c)
    assert check_functor_axioms(cone.kernel).ok
    beta = factor_through_kernel(cone, a2_inclusion(QQ))
    assert cone.inclusion @ beta == a2_inclusion(QQ)


@given(fields, rngs)
def test_universal_properties(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    X, Y = random_functor(rng, C), random_functor(rng, C)
    alpha = random_nat(rng, X, Y)
    ker = pointwise_kernel(alpha)
    cok = pointwise_cokernel(alpha)
    assert check_functor_axioms(ker.kernel).ok and check_functor_axioms(cok.cokernel).ok
    assert check_vnat(ker.inclusion).ok and check_vnat(cok.projection).ok
    assert (alpha @ ker.inclusion).is_zero() and (cok.projection @ alpha).is_zero()
    assert factor_through_kernel(ker, ker.inclusion) == identity_nat(ker.kernel)
    assert factor_through_cokernel(cok, cok.projection) == identity_nat(cok.cokernel)


# --- Yoneda and coend -----------------------------------------------------

def test_yoneda_on_a_point():
    C = unit_category(QQ)
    R = representable(C, "*")
    w = yoneda_check(C, "*", R)
    assert w.ok and w.forward["*"] == Matrix.identity(QQ, 1)


def test_yoneda_a2_rep_a_at_b():
    C = a2_category(ZZ)
    w = yoneda_check(C, "b", representable(C, "a"))
    assert w.ok
    assert w.forward["b"].shape == (1, 1)


@given(rngs)
def test_yoneda_random_f2_representables(rng):
    C = random_category(rng, F2, n_objects=3)
    for c in C.objects:
        for d in C.objects:
            assert yoneda_check(C, c, representable(C, d)).ok


def test_yoneda_rejects_invalid_category():
    C = mutated_a2(QQ)
    R = VFunctor(C, {"a": 0, "b": 0}, {})
    with pytest.raises(AxiomError):
        yoneda_check(C, "a", R)


def test_coend_on_a_point():
    C = unit_category(QQ)
    X = oslash(representable(C, "*"), VObject(QQ, 2))
    w = coend_check(C, X)
    assert w.ok and w.forward["*"].shape == (2, 2)


def test_coend_of_simple_functor_on_a2():
    C = a2_category(ZZ)
    S = simple_functor(C, "a")
    E, _, _ = coend_functor(C, S)
    assert (E.rank("a"), E.rank("b")) == (1, 0)
    assert coend_check(C, S).ok


@given(rngs)
def test_coend_dimensions_over_f3(rng):
    C = random_category(rng, F3, n_objects=3)
    X = random_functor(rng, C)
    E, _, _ = coend_functor(C, X)
    assert all(E.rank(c) == X.rank(c) for c in C.objects)
    assert coend_check(C, X).ok


def test_unit_object_functor():
    C = unit_category(ZZ)
    assert representable(C, "*").obj("*") == unit_object(ZZ)
