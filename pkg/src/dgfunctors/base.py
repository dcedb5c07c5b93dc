"""Closed symmetric monoidal structure on finitely generated free modules.

Basis conventions, fixed once:

* ``a (x) b`` has basis ``e_i (x) e_j`` at index ``i * rank(b) + j``.
* ``[a, b]`` has basis ``E_(i,j)`` ("send e_i of a to e_j of b") at index
  ``i * rank(b) + j``.  A morphism ``h: a -> b`` with matrix ``H`` has
  coordinates ``vec(h)[(i, j)] = H[j][i]``.

With these choices the associator and both unitors are identity matrices and
every other structure isomorphism is a (signed) permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, RingMismatch, RingSpec, ShapeError, kronecker


@dataclass(frozen=True)
class VObject:
    ring: RingSpec
    rank: int
    label: str | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    def __eq__(self, other):
        # labels are cosmetic
        if not isinstance(other, VObject):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank

    def __hash__(self):
        return hash((self.ring, self.rank))


def unit_object(ring: RingSpec) -> VObject:
    return VObject(ring, 1, "e")


@dataclass(frozen=True)
class VMorphism:
    source: VObject
    target: VObject
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise ShapeError(f"matrix {self.matrix.shape} does not fit "
                             f"{self.source.rank} -> {self.target.rank}")
        if not (self.source.ring == self.target.ring == self.matrix.ring):
            raise RingMismatch("morphism mixes rings")

    @property
    def ring(self) -> RingSpec:
        return self.matrix.ring

    def __matmul__(self, other: "VMorphism") -> "VMorphism":
        """``self @ other`` is ``self o other``."""
        if other.target != self.source:
            raise ShapeError("morphisms do not compose")
        return VMorphism(other.source, self.target, self.matrix @ other.matrix)


def identity(a: VObject) -> VMorphism:
    return VMorphism(a, a, Matrix.identity(a.ring, a.rank))


def _same_ring(*objs: VObject) -> RingSpec:
    rings = {o.ring for o in objs}
    if len(rings) != 1:
        raise RingMismatch(f"mixed rings {sorted(map(str, rings))}")
    return rings.pop()


def tensor_obj(a: VObject, b: VObject) -> VObject:
    return VObject(_same_ring(a, b), a.rank * b.rank)


def tensor_mor(f: VMorphism, g: VMorphism) -> VMorphism:
    return VMorphism(tensor_obj(f.source, g.source), tensor_obj(f.target, g.target),
                     kronecker(f.matrix, g.matrix))


def hom_obj(a: VObject, b: VObject) -> VObject:
    return VObject(_same_ring(a, b), a.rank * b.rank)


def hom_matrix(f: Matrix, g: Matrix) -> Matrix:
    """Matrix of ``h |-> g o h o f`` on vectorized morphisms."""
    return kronecker(f.T, g)


def hom_mor(f: VMorphism, g: VMorphism) -> VMorphism:
    """``[f, g]: [a, b] -> [a', b']`` for ``f: a' -> a`` and ``g: b -> b'``."""
    return VMorphism(hom_obj(f.target, g.source), hom_obj(f.source, g.target),
                     hom_matrix(f.matrix, g.matrix))


def vec(h: Matrix) -> Matrix:
    """Coordinates of a morphism as a column vector in ``[a, b]``."""
    return Matrix._raw(h.ring, tuple((x,) for x in (h.rows[j][i] for i in range(h.ncols)
                                                    for j in range(h.nrows))),
                       h.nrows * h.ncols, 1)


def unvec(column, source_rank: int, target_rank: int, ring: RingSpec) -> Matrix:
    """Inverse of :func:`vec`; ``column`` is any flat sequence of coordinates."""
    column = tuple(column)
    if len(column) != source_rank * target_rank:
        raise ShapeError("coordinate vector has the wrong length")
    return Matrix._raw(ring, tuple(tuple(column[i * target_rank + j] for i in range(source_rank))
                                   for j in range(target_rank)), target_rank, source_rank)


def swap_matrix(ring: RingSpec, m: int, n: int) -> Matrix:
    """``a (x) b -> b (x) a`` for ranks ``m`` and ``n``."""
    return Matrix.permutation(ring, [j * m + i for i in range(m) for j in range(n)])


@dataclass(frozen=True)
class StructureIsos:
    assoc: VMorphism
    left_unit: VMorphism
    right_unit: VMorphism
    swap: VMorphism


def structure_isos(a: VObject, b: VObject, c: VObject) -> StructureIsos:
    """Associator on ``(a, b, c)``, unitors of ``a`` and the swap ``a (x) b -> b (x) a``."""
    ring = _same_ring(a, b, c)
    e = unit_object(ring)
    abc = tensor_obj(tensor_obj(a, b), c)
    return StructureIsos(
        assoc=VMorphism(abc, tensor_obj(a, tensor_obj(b, c)), Matrix.identity(ring, abc.rank)),
        left_unit=VMorphism(tensor_obj(e, a), a, Matrix.identity(ring, a.rank)),
        right_unit=VMorphism(tensor_obj(a, e), a, Matrix.identity(ring, a.rank)),
        swap=VMorphism(tensor_obj(a, b), tensor_obj(b, a), swap_matrix(ring, a.rank, b.rank)),
    )


def swap(a: VObject, b: VObject) -> VMorphism:
    return VMorphism(tensor_obj(a, b), tensor_obj(b, a), swap_matrix(a.ring, a.rank, b.rank))


def eval_matrix(ring: RingSpec, m: int, n: int) -> Matrix:
    """Evaluation ``[a, b] (x) a -> b`` for ``rank(a) = m``, ``rank(b) = n``."""
    data = [[ring.zero] * (m * n * m) for _ in range(n)]
    for i in range(m):
        for j in range(n):
            data[j][(i * n + j) * m + i] = ring.one
    return Matrix._raw(ring, tuple(map(tuple, data)), n, m * n * m)


def eval_mor(a: VObject, b: VObject) -> VMorphism:
    return VMorphism(tensor_obj(hom_obj(a, b), a), b, eval_matrix(_same_ring(a, b), a.rank, b.rank))


def unit_matrix(ring: RingSpec, n: int) -> Matrix:
    """``u_a: e -> [a, a]`` picking out the identity."""
    return vec(Matrix.identity(ring, n))


def compose_matrix(ring: RingSpec, ra: int, rb: int, rc: int) -> Matrix:
    """Composition ``[a, b] (x) [b, c] -> [a, c]``, ``h (x) k |-> k o h``."""
    cols = ra * rb * rb * rc
    data = [[ring.zero] * cols for _ in range(ra * rc)]
    for i in range(ra):
        for j in range(rb):
            for l in range(rc):
                data[i * rc + l][(i * rb + j) * (rb * rc) + j * rc + l] = ring.one
    return Matrix._raw(ring, tuple(map(tuple, data)), ra * rc, cols)


def compose_mor(a: VObject, b: VObject, c: VObject) -> VMorphism:
    ring = _same_ring(a, b, c)
    return VMorphism(tensor_obj(hom_obj(a, b), hom_obj(b, c)), hom_obj(a, c),
                     compose_matrix(ring, a.rank, b.rank, c.rank))


def adjoint_matrix(f: Matrix, x: int, b: int, c: int) -> Matrix:
    """Reshape ``f: x (x) b -> c`` into ``x -> [b, c]``."""
    if f.shape != (c, x * b):
        raise ShapeError(f"expected a {c}x{x * b} matrix, got {f.shape}")
    rows = f.rows
    return Matrix._raw(f.ring, tuple(tuple(rows[k][i * b + j] for i in range(x))
                                     for j in range(b) for k in range(c)), b * c, x)


def adjoint_inv_matrix(g: Matrix, x: int, b: int, c: int) -> Matrix:
    """Reshape ``g: x -> [b, c]`` back into ``x (x) b -> c``."""
    if g.shape != (b * c, x):
        raise ShapeError(f"expected a {b * c}x{x} matrix, got {g.shape}")
    rows = g.rows
    return Matrix._raw(g.ring, tuple(tuple(rows[j * c + k][i] for i in range(x) for j in range(b))
                                     for k in range(c)), c, x * b)


def adjoint(f: VMorphism, x: VObject, b: VObject) -> VMorphism:
    """The transpose ``x -> [b, c]`` of ``f: x (x) b -> c``."""
    if f.source.rank != x.rank * b.rank:
        raise ShapeError("source of f is not x (x) b")
    c = f.target
    return VMorphism(x, hom_obj(b, c), adjoint_matrix(f.matrix, x.rank, b.rank, c.rank))


def adjoint_inv(g: VMorphism, b: VObject, c: VObject) -> VMorphism:
    if g.target.rank != b.rank * c.rank:
        raise ShapeError("target of g is not [b, c]")
    x = g.source
    return VMorphism(tensor_obj(x, b), c, adjoint_inv_matrix(g.matrix, x.rank, b.rank, c.rank))
