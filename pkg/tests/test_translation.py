import pytest
from hypothesis import given

from dgfunctors.base import unit_object
from dgfunctors.catalog import a2_category, simple_functor
from dgfunctors.chains import ChainComplex, disk_complex, homology
from dgfunctors.enriched import unit_category
from dgfunctors.errors import AxiomError, InvariantError
from dgfunctors.functors import zero_functor
from dgfunctors.linalg import GF, QQ, ZZ, Matrix
from dgfunctors.sampling import random_category, random_functor_chainmap, random_functor_complex
from dgfunctors.translation import (DGFunctor, FunctorComplex, check_dg_functor,
                                    check_structure_condition, constant_dg_functor,
                                    functor_chainmap_to_nat, identity_dg_nat,
                                    identity_functor_chainmap, nat_to_functor_chainmap,
                                    to_dg_functor, to_functor_complex)

from strategies import fields, rings, rngs

F2 = GF(2)


def perturbed(F: DGFunctor, a, b, p, delta):
    C = F.category
    structure = {(x, y): {q: F.structure(x, y, q) for q in range(F.lo, F.hi + 1)}
                 for x in C.objects for y in C.objects}
    structure[(a, b)][p] = structure[(a, b)][p] + delta
    return DGFunctor(C, {c: F.complex(c) for c in C.objects}, structure)


def disk_at_a():
    """``F(a) = e`` in degrees 1, 0 joined by the identity, ``F(b) = 0``."""
    C = a2_category(QQ)
    D = disk_complex(unit_object(QQ), 1)
    one = Matrix(QQ, [[1]])
    return DGFunctor(C, {"a": D, "b": ChainComplex.zero(QQ)},
                     {("a", "a"): {0: one, 1: one}})


def test_constant_functor_on_a_point():
    X = ChainComplex(QQ, 0, [2, 1], {1: Matrix(QQ, [[1], [3]])})
    F = constant_dg_functor(unit_category(QQ), X)
    assert check_dg_functor(F).ok
    G = to_functor_complex(F)
    assert G.at("*") == X


def test_perturbed_structure_map_fails_at_its_degree():
    F = disk_at_a()
    rep = check_structure_condition(perturbed(F, "a", "a", 1, Matrix(QQ, [[1]])))
    assert not rep.ok
    assert {f.where[:2] for f in rep.failures} == {("a", "a")}
    assert all(f.where[2] in (1, 2) for f in rep.failures)
    assert check_structure_condition(F).ok


@given(rngs)
def test_perturbation_detected_on_random_complexes(rng):
    C = a2_category(QQ)
    F = to_dg_functor(random_functor_complex(rng, C, max_window=3))
    cells = [(a, b, p) for a in C.objects for b in C.objects for p in range(F.lo, F.hi + 1)
             if F.structure(a, b, p).nrows and F.structure(a, b, p).ncols
             and (F.complex(a).diff(p).ncols * F.complex(b).diff(p).nrows
                  or F.complex(a).diff(p + 1).nrows * F.complex(b).diff(p + 1).ncols)]
    if not cells:
        return
    a, b, p = rng.choice(cells)
    shape = F.structure(a, b, p).shape
    delta = Matrix(QQ, [[1 if (i, j) == (0, 0) else 0 for j in range(shape[1])]
                        for i in range(shape[0])])
    rep = check_structure_condition(perturbed(F, a, b, p, delta))
    changed = [f for f in rep.failures if f.where[:2] == (a, b)]
    # a degree-p change can only show up in the squares at p and p + 1
    assert all(f.where[2] in (p, p + 1) for f in changed)
    assert all(f.where[:2] == (a, b) for f in rep.failures)


def test_disk_translates_to_simple_functors():
    G = to_functor_complex(disk_at_a())
    S = simple_functor(a2_category(QQ), "a")
    assert (G.lo, G.hi) == (0, 1)
    assert G.level(0) == S and G.level(1) == S
    assert G.diff(1).component("a") == Matrix(QQ, [[1]])


def test_translation_rejects_invalid_dg_functor():
    F = perturbed(disk_at_a(), "a", "a", 1, Matrix(QQ, [[1]]))
    with pytest.raises(AxiomError):
        to_functor_complex(F)


def test_zero_complex_translates_to_zero():
    C = a2_category(ZZ)
    G = FunctorComplex(C, 0, [zero_functor(C)])
    F = to_dg_functor(G)
    assert all(F.complex(c).is_zero() for c in C.objects)


def test_functor_complex_rejects_bad_differential():
    C = a2_category(QQ)
    S = simple_functor(C, "a")
    with pytest.raises(InvariantError):
        FunctorComplex(C, 0, [S, S, S], {1: {"a": Matrix(QQ, [[1]])}, 2: {"a": Matrix(QQ, [[1]])}})


@given(rngs)
def test_round_trips_on_a2_over_f2(rng):
    C = a2_category(F2)
    G = random_functor_complex(rng, C, max_window=3)
    F = to_dg_functor(G)
    assert check_structure_condition(F).ok
    assert to_functor_complex(F) == G
    assert to_dg_functor(to_functor_complex(F)) == F


@given(rings, rngs)
def test_round_trips_on_random_categories(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    G = random_functor_complex(rng, C)
    F = to_dg_functor(G)
    assert check_dg_functor(F).ok
    assert to_functor_complex(F) == G


@given(rings, rngs)
def test_morphism_translation_round_trips_and_composes(ring, rng):
    C = random_category(rng, ring, n_objects=2)
    G, H = random_functor_complex(rng, C), random_functor_complex(rng, C)
    g = random_functor_chainmap(rng, G, H)
    assert g.check().ok
    f = functor_chainmap_to_nat(g)
    assert f.check().ok
    assert nat_to_functor_chainmap(f, G, H) == g
    k = random_functor_chainmap(rng, H, H)
    fk = functor_chainmap_to_nat(k)
    assert functor_chainmap_to_nat(k @ g) == fk @ f


def test_identity_translates_to_identity():
    F = disk_at_a()
    G = to_functor_complex(F)
    assert nat_to_functor_chainmap(identity_dg_nat(F), G, G) == identity_functor_chainmap(G)


@given(fields, rngs)
def test_translation_keeps_pointwise_homology(ring, rng):
    C = random_category(rng, ring, n_objects=3)
    G = random_functor_complex(rng, C)
    F = to_dg_functor(G)
    for c in C.objects:
        for n in G.degrees():
            assert homology(F.complex(c), n) == homology(G.at(c), n)
