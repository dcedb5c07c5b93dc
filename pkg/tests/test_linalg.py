from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.domains import ZZ as SZZ

from dgfunctors.linalg import (GF, QQ, ZZ, Matrix, PresentedModule, RingMismatch, RingSpec,
                               ShapeError, cokernel_projection, homology_at, inverse, kernel_basis,
                               kernel_with_retraction, kronecker, rank, smith_normal_form, solve)

from dgfunctors.sampling import random_complex

from strategies import fields, int_matrices, matrices, rngs

F2 = GF(2)


def M(rows, ring=ZZ):
    return Matrix(ring, rows)


def diag_entries(D):
    return [D[i, i] for i in range(min(D.shape))]


# --- rings ------------------------------------------------------------------

def test_ring_parse_round_trip():
    for text in ["Q", "Z", "F2", "F7"]:
        assert str(RingSpec.parse(text)) == text
    assert RingSpec.parse("GF5") == GF(5)


def test_ring_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        RingSpec.parse("R")


def test_field_coercion_of_fractions():
    assert GF(5).coerce(Fraction(1, 2)) == 3
    with pytest.raises(ValueError):
        ZZ.coerce(Fraction(1, 2))


# --- matrix products ------------------------------------------------------

def test_permutation_action():
    assert M([[0, 1], [1, 0]]) @ M([[1], [2]]) == M([[2], [1]])


def test_identity_product():
    A = M([[1, 2, 3], [4, 5, 6]])
    assert Matrix.identity(ZZ, 2) @ A == A


def test_characteristic_two():
    assert M([[1, 1]], F2) @ M([[1], [1]], F2) == M([[0]], F2)


def test_kronecker_examples():
    assert kronecker(M([[2]]), M([[3]])) == M([[6]])
    assert kronecker(Matrix.identity(ZZ, 2), Matrix.identity(ZZ, 3)) == Matrix.identity(ZZ, 6)
    assert kronecker(M([[0, 1], [1, 0]]), M([[2]])) == M([[0, 2], [2, 0]])


def test_shape_and_ring_errors():
    with pytest.raises(ShapeError):
        M([[1, 2]]) @ M([[1, 2]])
    with pytest.raises(RingMismatch):
        M([[1]]) @ M([[1]], QQ)
    with pytest.raises(ShapeError):
        Matrix(ZZ, [[1, 2], [3]])


def test_matrix_is_immutable():
    A = M([[1]])
    with pytest.raises(AttributeError):
        A.nrows = 3


# --- Smith normal form ----------------------------------------------------

def test_snf_diag_2_3():
    _, D, _ = smith_normal_form(M([[2, 0], [0, 3]]))
    assert diag_entries(D) == [1, 6]


def test_snf_2468():
    _, D, _ = smith_normal_form(M([[2, 4], [6, 8]]))
    assert diag_entries(D) == [2, 4]


def test_snf_zero():
    _, D, _ = smith_normal_form(Matrix.zeros(ZZ, 2, 3))
    assert D.is_zero()


def test_snf_needs_integers():
    with pytest.raises(RingMismatch):
        smith_normal_form(M([[1]], QQ))


@given(int_matrices())
def test_snf_reconstructs_and_divides(A):
    U, D, V = smith_normal_form(A)
    assert U @ D @ V == A
    for W in (U, V):
        if W.nrows:
            assert abs(sympy.Matrix(W.tolist()).det()) == 1
    d = [x for x in diag_entries(D) if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    for i in range(D.nrows):
        for j in range(D.ncols):
            assert i == j or D[i, j] == 0


@given(int_matrices())
def test_snf_matches_sympy(A):
    if A.nrows == 0 or A.ncols == 0:
        return
    ours = [x for x in diag_entries(smith_normal_form(A)[1]) if x]
    ref = sympy_snf(sympy.Matrix(A.tolist()), domain=SZZ)
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert ours == sorted(theirs)


@given(int_matrices())
def test_snf_deterministic(A):
    assert smith_normal_form(A) == smith_normal_form(A)


# --- kernels, cokernels, solving --------------------------------------------

def test_kernel_examples():
    K = kernel_basis(M([[1, 1]], QQ))
    assert K.shape == (2, 1) and K[0, 0] == -K[1, 0] != 0
    assert kernel_basis(M([[1, 2], [3, 4]], QQ)).ncols == 0
    assert kernel_basis(M([[2]])).ncols == 0


@given(matrices())
def test_kernel_dimension_and_retraction(A):
    K, L = kernel_with_retraction(A)
    assert (A @ K).is_zero()
    assert K.ncols + rank(A) == A.ncols
    assert L @ K == Matrix.identity(A.ring, K.ncols)


@given(matrices())
def test_solve_finds_preimages(A):
    x = Matrix(A.ring, [[1]] * A.ncols, A.ncols, 1)
    b = A @ x
    y = solve(A, b)
    assert y is not None and A @ y == b


def test_solve_reports_no_solution():
    assert solve(M([[2]]), M([[1]])) is None
    assert solve(M([[1], [1]], QQ), M([[1], [2]], QQ)) is None


def test_inverse():
    A = M([[2, 1], [1, 1]])
    assert A @ inverse(A) == Matrix.identity(ZZ, 2)
    with pytest.raises(ValueError):
        inverse(M([[2]]))


@given(matrices())
def test_cokernel_projection_when_free(A):
    try:
        pi, s = cokernel_projection(A)
    except ValueError:
        assert A.ring == ZZ
        return
    assert (pi @ A).is_zero()
    assert pi @ s == Matrix.identity(A.ring, pi.nrows)
    assert pi.nrows == A.nrows - rank(A)


def test_cokernel_with_torsion_raises():
    with pytest.raises(ValueError):
        cokernel_projection(M([[2]]))


# --- homology -------------------------------------------------------------

def test_homology_examples():
    assert homology_at(M([[3]]), Matrix.zeros(ZZ, 0, 1)) == PresentedModule(ZZ, 0, (3,))
    assert homology_at(Matrix.zeros(ZZ, 1, 0), Matrix.zeros(ZZ, 0, 1)) == PresentedModule(ZZ, 1)
    d_in = M([[1, 1], [1, 1]], F2)
    assert homology_at(d_in, Matrix.zeros(F2, 0, 2)) == PresentedModule(F2, 1)


def test_homology_rejects_non_complex():
    with pytest.raises(ValueError):
        homology_at(M([[1]]), M([[1]]))


@given(fields, rngs)
def test_homology_dual_complex_over_field(ring, rng):
    X = random_complex(rng, ring)
    for n in X.degrees():
        d_in, d_out = X.diff(n + 1), X.diff(n)
        assert homology_at(d_in, d_out).free_rank == homology_at(d_out.T, d_in.T).free_rank


def test_presented_module_validation():
    with pytest.raises(ValueError):
        PresentedModule(ZZ, 0, (2, 3))
    with pytest.raises(ValueError):
        PresentedModule(QQ, 0, (2,))
    assert str(PresentedModule(ZZ, 1, (2, 4))) == "Z + Z/2 + Z/4"
    assert str(PresentedModule(GF(3), 2)) == "F3^2"
    assert PresentedModule(ZZ, 0, (2,)).direct_sum(PresentedModule(ZZ, 0, (3,))) == \
        PresentedModule(ZZ, 0, (6,))
