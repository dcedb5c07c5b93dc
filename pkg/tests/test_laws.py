import pytest
from hypothesis import given

from dgfunctors.chains import ChainComplex, symmetry_chain, tensor_complex
from dgfunctors.laws import (adjunction_counts_f2, chain_map_rank, check_adjunction,
                             check_composition_sign, check_symmetry, count_chain_maps_f2,
                             graded_dimension, symmetry_by_elements)
from dgfunctors.linalg import GF, QQ, Matrix
from dgfunctors.sampling import random_complex

from strategies import rings, rngs

F2 = GF(2)


def small(rng, ring, width=3, rank=2):
    return random_complex(rng, ring, max_window=width, max_rank=rank)


@given(rings, rngs)
def test_symmetry_report_ok(ring, rng):
    X, Y = small(rng, ring), small(rng, ring)
    assert check_symmetry(X, Y).ok


def test_symmetry_sign_on_odd_degrees():
    X = ChainComplex(QQ, 1, [1])
    s = symmetry_chain(X, X)
    assert s.component(2) == Matrix(QQ, [[-1]])
    assert symmetry_by_elements(X, X, 2) == s.component(2)


@given(rings, rngs)
def test_adjunction_report_ok(ring, rng):
    X, Y, Z = (small(rng, ring, 2, 2) for _ in range(3))
    rep = check_adjunction(X, Y, Z, samples=2, seed=rng.randrange(1000))
    assert rep.ok, rep.render()


@given(rings, rngs)
def test_composition_sign_matches_iterated_evaluation(ring, rng):
    A, B, C = (small(rng, ring, 2, 2) for _ in range(3))
    assert check_composition_sign(A, B, C).ok


@given(rngs)
def test_exhaustive_counts_agree_over_f2(rng):
    while True:
        X, Y, Z = (small(rng, F2, 2, 2) for _ in range(3))
        if X.total_rank() + Y.total_rank() + Z.total_rank() <= 8:
            break
    try:
        left, right = adjunction_counts_f2(X, Y, Z, limit=14)
    except ValueError:
        return  # graded dimension above the enumeration cap
    assert left == right == 2 ** chain_map_rank(tensor_complex(X, Y), Z)


def test_count_limit_enforced():
    X = ChainComplex(F2, 0, [4])
    with pytest.raises(ValueError):
        count_chain_maps_f2(X, X, limit=10)
    with pytest.raises(ValueError):
        count_chain_maps_f2(ChainComplex(QQ, 0, [1]), ChainComplex(QQ, 0, [1]))


def test_graded_dimension():
    X = ChainComplex(F2, 0, [1, 2])
    assert graded_dimension(X, X) == 5
    assert count_chain_maps_f2(X, X) == 2 ** 5
