"""Bounded chain complexes of free modules with their closed symmetric monoidal structure.

Summands of ``(X (.) Y)_n`` are ordered by decreasing ``p`` (the degree in
``X``); factors of ``Hom(X, Y)_n`` are ordered by increasing ``p`` (the
source degree).  All direct-sum isomorphisms are permutations in this order.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .base import (VObject, adjoint_inv_matrix, adjoint_matrix, compose_matrix, eval_matrix,
                   hom_matrix, swap_matrix, unit_matrix, unvec, vec)
from .errors import InvariantError
from .linalg import (Matrix, PresentedModule, RingMismatch, RingSpec, ShapeError, assemble,
                     block_diag, homology_at, hstack, kernel_basis, kronecker, vstack)


class ChainComplex:
    """Complex ``X_lo <- ... <- X_hi`` with ``diff(n): X_n -> X_{n-1}``.

    Degrees outside the window are zero.  Equality ignores how much zero
    padding a window carries.
    """

    __slots__ = ("ring", "lo", "hi", "_ranks", "_diffs", "factors", "hom_of")

    def __init__(self, ring: RingSpec, lo: int, ranks: Sequence[int],
                 diffs: Mapping[int, Matrix] | None = None, check: bool = True):
        self.ring = ring
        self.lo = lo
        self.hi = lo + len(ranks) - 1
        self._ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self._ranks):
            raise ValueError("negative rank in complex")
        self._diffs = {}
        self.factors = None   # (X, Y) when built by tensor_complex
        self.hom_of = None    # (X, Y) when built by hom_complex
        for n, d in (diffs or {}).items():
            shape = (self.rank(n - 1), self.rank(n))
            if d.ring != ring:
                raise RingMismatch(f"differential in degree {n} lives over {d.ring}")
            if d.shape != shape:
                raise ShapeError(f"differential in degree {n} has shape {d.shape}, expected {shape}")
            if not (self.lo < n <= self.hi) and not d.is_zero():
                raise ShapeError(f"nonzero differential in degree {n} outside the window")
            if n - 1 >= self.lo and n <= self.hi and not d.is_zero():
                self._diffs[n] = d
        if check:
            for n in range(self.lo + 2, self.hi + 1):
                if not (self.diff(n - 1) @ self.diff(n)).is_zero():
                    raise InvariantError("d^2 = 0", f"d_{n - 1} o d_{n} != 0 at degree {n}")

    @classmethod
    def zero(cls, ring: RingSpec) -> "ChainComplex":
        return cls(ring, 0, [])

    @classmethod
    def concentrated(cls, obj: VObject, degree: int = 0) -> "ChainComplex":
        return cls(obj.ring, degree, [obj.rank])

    @classmethod
    def unit(cls, ring: RingSpec) -> "ChainComplex":
        """The unit complex: rank one in degree zero."""
        return cls(ring, 0, [1])

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, n: int) -> int:
        return self._ranks[n - self.lo] if self.lo <= n <= self.hi else 0

    def entry(self, n: int) -> VObject:
        return VObject(self.ring, self.rank(n))

    def diff(self, n: int) -> Matrix:
        d = self._diffs.get(n)
        return d if d is not None else Matrix.zeros(self.ring, self.rank(n - 1), self.rank(n))

    def in_window(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def support(self) -> list[int]:
        return [n for n in self.degrees() if self.rank(n)]

    def total_rank(self) -> int:
        return sum(self._ranks)

    def is_zero(self) -> bool:
        return self.total_rank() == 0

    def trimmed(self) -> "ChainComplex":
        sup = self.support()
        if not sup:
            return ChainComplex.zero(self.ring)
        return self.rewindow(sup[0], sup[-1])

    def rewindow(self, lo: int, hi: int) -> "ChainComplex":
        if any(self.rank(n) for n in self.degrees() if not lo <= n <= hi):
            raise ShapeError("rewindow would drop nonzero entries")
        return ChainComplex(self.ring, lo, [self.rank(n) for n in range(lo, hi + 1)],
                            {n: self.diff(n) for n in range(lo + 1, hi + 1)}, check=False)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.ring != other.ring:
            return False
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return all(self.rank(n) == other.rank(n) for n in range(lo, hi + 1)) and all(
            self.diff(n) == other.diff(n) for n in range(lo, hi + 2))

    def __hash__(self):
        t = self.trimmed()
        return hash((t.ring, t.lo, t._ranks, tuple(sorted((n, d) for n, d in t._diffs.items()))))

    def __repr__(self):
        return f"ChainComplex({self.ring}, lo={self.lo}, ranks={list(self._ranks)})"


class ChainMap:
    """Degree-preserving map of complexes; ``component(n): X_n -> Y_n``."""

    __slots__ = ("source", "target", "_comps")

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: Mapping[int, Matrix], check: bool = True):
        if source.ring != target.ring:
            raise RingMismatch("chain map between complexes over different rings")
        self.source = source
        self.target = target
        self._comps = {}
        for n, f in components.items():
            shape = (target.rank(n), source.rank(n))
            if f.shape != shape:
                raise ShapeError(f"component {n} has shape {f.shape}, expected {shape}")
            if not f.is_zero():
                self._comps[n] = f
        if check:
            bad = self.chain_defect()
            if bad is not None:
                raise InvariantError("chain map", f"d f != f d at degree {bad}")

    @property
    def ring(self) -> RingSpec:
        return self.source.ring

    def degrees(self) -> range:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def component(self, n: int) -> Matrix:
        f = self._comps.get(n)
        return f if f is not None else Matrix.zeros(self.ring, self.target.rank(n),
                                                    self.source.rank(n))

    def chain_defect(self) -> int | None:
        X, Y = self.source, self.target
        for n in range(min(X.lo, Y.lo), max(X.hi, Y.hi) + 2):
            if X.rank(n) == 0 or Y.rank(n - 1) == 0:
                continue
            if Y.diff(n) @ self.component(n) != self.component(n - 1) @ X.diff(n):
                return n
        return None

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.target != self.source:
            raise ShapeError("chain maps do not compose")
        degs = set(self.degrees()) | set(other.degrees())
        return ChainMap(other.source, self.target,
                        {n: self.component(n) @ other.component(n) for n in degs}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise ShapeError("cannot add chain maps with different ends")
        return ChainMap(self.source, self.target,
                        {n: self.component(n) + other.component(n) for n in self.degrees()},
                        check=False)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {n: -self.component(n) for n in self.degrees()}, check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        degs = set(self.degrees()) | set(other.degrees())
        return all(self.component(n) == other.component(n) for n in degs)

    def __hash__(self):
        return hash((self.source, self.target))

    def is_zero(self) -> bool:
        return not self._comps

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def identity_map(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {n: Matrix.identity(X.ring, X.rank(n)) for n in X.degrees()},
                    check=False)


def zero_map(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    return ChainMap(X, Y, {}, check=False)


def _same_ring(*cs: ChainComplex) -> RingSpec:
    rings = {c.ring for c in cs}
    if len(rings) != 1:
        raise RingMismatch(f"mixed rings {sorted(map(str, rings))}")
    return rings.pop()


# --------------------------------------------------------------------------
# layouts


def tensor_summands(X: ChainComplex, Y: ChainComplex, n: int) -> list[tuple[int, int]]:
    """Summands ``(p, q)`` of ``(X (.) Y)_n``, decreasing ``p``."""
    return [(p, n - p) for p in range(X.hi, X.lo - 1, -1) if Y.in_window(n - p)]


def _tensor_offsets(X, Y, n):
    off, pos = {}, 0
    for p, q in tensor_summands(X, Y, n):
        off[(p, q)] = pos
        pos += X.rank(p) * Y.rank(q)
    return off, pos


def hom_factors(X: ChainComplex, Y: ChainComplex, n: int) -> list[int]:
    """Factors ``p`` of ``Hom(X, Y)_n = prod_p [X_p, Y_{p+n}]``, increasing ``p``."""
    return [p for p in X.degrees() if Y.in_window(p + n)]


def _hom_offsets(X, Y, n):
    off, pos = {}, 0
    for p in hom_factors(X, Y, n):
        off[p] = pos
        pos += X.rank(p) * Y.rank(p + n)
    return off, pos


def summand_block(k: Matrix, X: ChainComplex, Y: ChainComplex, p: int, q: int) -> Matrix:
    """Columns of ``k: (X (.) Y)_{p+q} -> Z`` on the summand ``X_p (x) Y_q``."""
    off, _ = _tensor_offsets(X, Y, p + q)
    if (p, q) not in off:
        return Matrix.zeros(k.ring, k.nrows, 0)
    o = off[(p, q)]
    return k.block(0, k.nrows, o, o + X.rank(p) * Y.rank(q))


def hom_projection(X: ChainComplex, Y: ChainComplex, n: int, p: int) -> Matrix:
    """Projection ``Hom(X, Y)_n -> [X_p, Y_{p+n}]``."""
    off, total = _hom_offsets(X, Y, n)
    size = X.rank(p) * Y.rank(p + n)
    if p not in off:
        return Matrix.zeros(X.ring, size, total)
    return _selector(X.ring, off[p], size, total)


def _selector(ring: RingSpec, start: int, size: int, total: int) -> Matrix:
    return Matrix._raw(ring, tuple(tuple(ring.one if j == start + i else ring.zero
                                         for j in range(total)) for i in range(size)),
                       size, total)


# --------------------------------------------------------------------------
# tensor product


def tensor_complex(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    ring = _same_ring(X, Y)
    if X.hi < X.lo or Y.hi < Y.lo:
        return ChainComplex.zero(ring)
    lo, hi = X.lo + Y.lo, X.hi + Y.hi
    layouts = {n: tensor_summands(X, Y, n) for n in range(lo - 1, hi + 1)}
    ranks = [sum(X.rank(p) * Y.rank(q) for p, q in layouts[n]) for n in range(lo, hi + 1)]
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src, tgt = layouts[n], layouts[n - 1]
        tidx = {pq: i for i, pq in enumerate(tgt)}
        blocks = {}
        for j, (p, q) in enumerate(src):
            if (p - 1, q) in tidx:
                blocks[(tidx[(p - 1, q)], j)] = kronecker(
                    X.diff(p), Matrix.identity(ring, Y.rank(q)))
            if (p, q - 1) in tidx:
                m = kronecker(Matrix.identity(ring, X.rank(p)), Y.diff(q))
                blocks[(tidx[(p, q - 1)], j)] = -m if p % 2 else m
        diffs[n] = assemble(ring, [X.rank(p) * Y.rank(q) for p, q in tgt],
                            [X.rank(p) * Y.rank(q) for p, q in src], blocks)
    T = ChainComplex(ring, lo, ranks, diffs, check=False)
    T.factors = (X, Y)
    return T


def tensor_chainmap(f: ChainMap, g: ChainMap) -> ChainMap:
    """``(f (.) g)_n = (+)_{p+q=n} f_p (x) g_q``."""
    ring = _same_ring(f.source, g.source)
    S = tensor_complex(f.source, g.source)
    T = tensor_complex(f.target, g.target)
    X, Y, X2, Y2 = f.source, g.source, f.target, g.target
    comps = {}
    for n in S.degrees():
        soff, _ = _tensor_offsets(X, Y, n)
        toff, _ = _tensor_offsets(X2, Y2, n)
        src = tensor_summands(X, Y, n)
        tgt = tensor_summands(X2, Y2, n)
        tidx = {pq: i for i, pq in enumerate(tgt)}
        blocks = {}
        for j, (p, q) in enumerate(src):
            if (p, q) in tidx:
                blocks[(tidx[(p, q)], j)] = kronecker(f.component(p), g.component(q))
        comps[n] = assemble(ring, [X2.rank(p) * Y2.rank(q) for p, q in tgt],
                            [X.rank(p) * Y.rank(q) for p, q in src], blocks)
    return ChainMap(S, T, comps, check=False)


# --------------------------------------------------------------------------
# internal Hom


def hom_complex(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """``Hom(X, Y)_n = prod_p [X_p, Y_{p+n}]`` with
    ``d(f)_p = d^Y o f_p - (-1)^n f_{p-1} o d^X_p``."""
    ring = _same_ring(X, Y)
    if X.hi < X.lo or Y.hi < Y.lo:
        H = ChainComplex.zero(ring)
        H.hom_of = (X, Y)
        return H
    lo, hi = Y.lo - X.hi, Y.hi - X.lo
    facs = {n: hom_factors(X, Y, n) for n in range(lo - 1, hi + 1)}
    size = lambda n, p: X.rank(p) * Y.rank(p + n)
    ranks = [sum(size(n, p) for p in facs[n]) for n in range(lo, hi + 1)]
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src, tgt = facs[n], facs[n - 1]
        sidx = {p: j for j, p in enumerate(src)}
        blocks = {}
        for i, p in enumerate(tgt):
            if p in sidx:
                blocks[(i, sidx[p])] = hom_matrix(Matrix.identity(ring, X.rank(p)),
                                                  Y.diff(p + n))
            if p - 1 in sidx:
                m = hom_matrix(X.diff(p), Matrix.identity(ring, Y.rank(p + n - 1)))
                # -(-1)^n
                blocks[(i, sidx[p - 1])] = m if n % 2 else -m
        diffs[n] = assemble(ring, [size(n - 1, p) for p in tgt], [size(n, p) for p in src],
                            blocks)
    H = ChainComplex(ring, lo, ranks, diffs, check=False)
    H.hom_of = (X, Y)
    return H


def hom_chainmap(f: ChainMap, g: ChainMap) -> ChainMap:
    """``Hom(f, g): Hom(X, Y) -> Hom(X', Y')`` for ``f: X' -> X``, ``g: Y -> Y'``."""
    X, X2, Y, Y2 = f.target, f.source, g.source, g.target
    S, T = hom_complex(X, Y), hom_complex(X2, Y2)
    ring = S.ring
    comps = {}
    for n in set(S.degrees()) | set(T.degrees()):
        src, tgt = hom_factors(X, Y, n), hom_factors(X2, Y2, n)
        sidx = {p: j for j, p in enumerate(src)}
        blocks = {(i, sidx[p]): hom_matrix(f.component(p), g.component(p + n))
                  for i, p in enumerate(tgt) if p in sidx}
        comps[n] = assemble(ring, [X2.rank(p) * Y2.rank(p + n) for p in tgt],
                            [X.rank(p) * Y.rank(p + n) for p in src], blocks)
    return ChainMap(S, T, comps, check=False)


def hom_cycle_to_chainmap(X: ChainComplex, Y: ChainComplex, v: Sequence) -> ChainMap:
    """Read a degree-0 element of ``Hom(X, Y)`` as a graded map ``X -> Y``."""
    off, total = _hom_offsets(X, Y, 0)
    if len(v) != total:
        raise ShapeError("vector does not live in Hom(X, Y)_0")
    comps = {}
    for p, o in off.items():
        comps[p] = unvec(v[o:o + X.rank(p) * Y.rank(p)], X.rank(p), Y.rank(p), X.ring)
    return ChainMap(X, Y, comps, check=False)


def chainmap_to_hom_cycle(f: ChainMap) -> tuple:
    X, Y = f.source, f.target
    out = []
    for p in hom_factors(X, Y, 0):
        out.extend(x for (x,) in vec(f.component(p)).rows)
    return tuple(out)


def chain_map_basis(X: ChainComplex, Y: ChainComplex) -> list[ChainMap]:
    """A basis of chain maps ``X -> Y``: the degree-0 cycles of ``Hom(X, Y)``."""
    H = hom_complex(X, Y)
    K = kernel_basis(H.diff(0))
    return [hom_cycle_to_chainmap(X, Y, col) for col in K.columns()]


# --------------------------------------------------------------------------
# structure isomorphisms


def symmetry_chain(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    """``X (.) Y -> Y (.) X``, ``(-1)^{pq}`` times the swap on ``X_p (x) Y_q``."""
    ring = _same_ring(X, Y)
    S, T = tensor_complex(X, Y), tensor_complex(Y, X)
    comps = {}
    for n in S.degrees():
        src, tgt = tensor_summands(X, Y, n), tensor_summands(Y, X, n)
        tidx = {pq: i for i, pq in enumerate(tgt)}
        blocks = {}
        for j, (p, q) in enumerate(src):
            m = swap_matrix(ring, X.rank(p), Y.rank(q))
            blocks[(tidx[(q, p)], j)] = -m if (p * q) % 2 else m
        comps[n] = assemble(ring, [Y.rank(q) * X.rank(p) for q, p in tgt],
                            [X.rank(p) * Y.rank(q) for p, q in src], blocks)
    return ChainMap(S, T, comps, check=False)


def _assoc_images(X, Y, Z, n):
    """Index of each basis vector of ``((X (.) Y) (.) Z)_n`` inside ``(X (.) (Y (.) Z))_n``."""
    XY, YZ = tensor_complex(X, Y), tensor_complex(Y, Z)
    src_off, src_total = _tensor_offsets(XY, Z, n)
    tgt_off, _ = _tensor_offsets(X, YZ, n)
    images = [None] * src_total
    for (s, k), o_sk in src_off.items():
        inner, _ = _tensor_offsets(X, Y, s)
        zk = Z.rank(k)
        for (i, j), o_ij in inner.items():
            t = j + k
            o_it = tgt_off[(i, t)]
            inner_t, _ = _tensor_offsets(Y, Z, t)
            o_jk = inner_t[(j, k)]
            rt = YZ.rank(t)
            for x in range(X.rank(i)):
                for y in range(Y.rank(j)):
                    for z in range(zk):
                        src = o_sk + (o_ij + x * Y.rank(j) + y) * zk + z
                        images[src] = o_it + x * rt + o_jk + y * zk + z
    return images


def assoc_chain(X: ChainComplex, Y: ChainComplex, Z: ChainComplex) -> ChainMap:
    """``(X (.) Y) (.) Z -> X (.) (Y (.) Z)``: base associators regrouped by degree."""
    ring = _same_ring(X, Y, Z)
    S = tensor_complex(tensor_complex(X, Y), Z)
    T = tensor_complex(X, tensor_complex(Y, Z))
    comps = {n: Matrix.permutation(ring, _assoc_images(X, Y, Z, n), T.rank(n))
             for n in S.degrees()}
    return ChainMap(S, T, comps, check=False)


def assoc_chain_inv(X: ChainComplex, Y: ChainComplex, Z: ChainComplex) -> ChainMap:
    a = assoc_chain(X, Y, Z)
    return ChainMap(a.target, a.source, {n: a.component(n).T for n in a.degrees()}, check=False)


def left_unit_chain(Y: ChainComplex) -> ChainMap:
    """``eps (.) Y -> Y``."""
    S = tensor_complex(ChainComplex.unit(Y.ring), Y)
    return ChainMap(S, Y, {n: Matrix.identity(Y.ring, Y.rank(n)) for n in Y.degrees()},
                    check=False)


def right_unit_chain(X: ChainComplex) -> ChainMap:
    """``X (.) eps -> X``."""
    S = tensor_complex(X, ChainComplex.unit(X.ring))
    return ChainMap(S, X, {n: Matrix.identity(X.ring, X.rank(n)) for n in X.degrees()},
                    check=False)


def _invert_permutation_map(f: ChainMap) -> ChainMap:
    return ChainMap(f.target, f.source, {n: f.component(n).T for n in f.degrees()}, check=False)


def left_unit_chain_inv(Y: ChainComplex) -> ChainMap:
    return _invert_permutation_map(left_unit_chain(Y))


def right_unit_chain_inv(X: ChainComplex) -> ChainMap:
    return _invert_permutation_map(right_unit_chain(X))


# --------------------------------------------------------------------------
# closed structure


def _factors_of(k: ChainMap) -> tuple[ChainComplex, ChainComplex]:
    if k.source.factors is None:
        raise ShapeError("source is not a tensor complex built by tensor_complex")
    return k.source.factors


def adjoint_chain(k: ChainMap) -> ChainMap:
    """``phi(k): X -> Hom(Y, Z)`` for ``k: X (.) Y -> Z``."""
    X, Y = _factors_of(k)
    Z = k.target
    H = hom_complex(Y, Z)
    comps = {}
    for p in X.degrees():
        blocks = []
        for q in hom_factors(Y, Z, p):
            kpq = summand_block(k.component(p + q), X, Y, p, q)
            blocks.append(adjoint_matrix(kpq, X.rank(p), Y.rank(q), Z.rank(p + q)))
        comps[p] = vstack(X.ring, X.rank(p), blocks)
    return ChainMap(X, H, comps, check=False)


def adjoint_chain_inv(g: ChainMap) -> ChainMap:
    """``phi^{-1}(g): X (.) Y -> Z`` for ``g: X -> Hom(Y, Z)``."""
    if g.target.hom_of is None:
        raise ShapeError("target is not a Hom complex built by hom_complex")
    X = g.source
    Y, Z = g.target.hom_of
    T = tensor_complex(X, Y)
    ring = X.ring
    comps = {}
    for n in T.degrees():
        cols = []
        for p, q in tensor_summands(X, Y, n):
            x, y, z = X.rank(p), Y.rank(q), Z.rank(n)
            if Z.in_window(n):
                off, _ = _hom_offsets(Y, Z, p)
                gp = g.component(p)
                o = off[q]
                block = gp.block(o, o + y * z, 0, x)
                cols.append(adjoint_inv_matrix(block, x, y, z))
            else:
                cols.append(Matrix.zeros(ring, 0, x * y))
        comps[n] = hstack(ring, Z.rank(n), cols)
    return ChainMap(T, Z, comps, check=False)


def eval_chain(A: ChainComplex, B: ChainComplex) -> ChainMap:
    """``Hom(A, B) (.) A -> B`` built from base evaluations and factor projections."""
    ring = _same_ring(A, B)
    H = hom_complex(A, B)
    S = tensor_complex(H, A)
    comps = {}
    for n in S.degrees():
        blocks = {}
        summands = tensor_summands(H, A, n)
        for j, (t, s) in enumerate(summands):
            if not B.in_window(n):
                continue
            pr = hom_projection(A, B, t, s)
            ev = eval_matrix(ring, A.rank(s), B.rank(s + t))
            blocks[(0, j)] = ev @ kronecker(pr, Matrix.identity(ring, A.rank(s)))
        comps[n] = assemble(ring, [B.rank(n)], [H.rank(t) * A.rank(s) for t, s in summands],
                            blocks)
    return ChainMap(S, B, comps, check=False)


def compose_hom_component(A: ChainComplex, B: ChainComplex, C: ChainComplex, n: int) -> Matrix:
    """Degree-``n`` component of ``Hom(A, B) (.) Hom(B, C) -> Hom(A, C)``."""
    ring = _same_ring(A, B, C)
    HAB, HBC = hom_complex(A, B), hom_complex(B, C)
    summands = tensor_summands(HAB, HBC, n)
    targets = hom_factors(A, C, n)
    blocks = {}
    for j, (p, q) in enumerate(summands):
        sign = -1 if (p * q) % 2 else 1
        for i, r in enumerate(targets):
            if not B.in_window(r + p):
                continue
            pr1 = hom_projection(A, B, p, r)
            pr2 = hom_projection(B, C, q, r + p)
            c = compose_matrix(ring, A.rank(r), B.rank(r + p), C.rank(r + p + q))
            m = c @ kronecker(pr1, pr2)
            blocks[(i, j)] = -m if sign < 0 else m
    return assemble(ring, [A.rank(r) * C.rank(r + n) for r in targets],
                    [HAB.rank(p) * HBC.rank(q) for p, q in summands], blocks)


def compose_hom(A: ChainComplex, B: ChainComplex, C: ChainComplex) -> ChainMap:
    """Composition ``Hom(A, B) (.) Hom(B, C) -> Hom(A, C)``; sign ``(-1)^{pq}`` on summand ``(p, q)``."""
    S = tensor_complex(hom_complex(A, B), hom_complex(B, C))
    T = hom_complex(A, C)
    comps = {n: compose_hom_component(A, B, C, n) for n in S.degrees() if T.in_window(n)}
    return ChainMap(S, T, comps, check=False)


def unit_chain(A: ChainComplex) -> ChainMap:
    """``eps -> Hom(A, A)``: the identity of each ``A_p`` in degree zero."""
    E = ChainComplex.unit(A.ring)
    H = hom_complex(A, A)
    col = vstack(A.ring, 1, [unit_matrix(A.ring, A.rank(p)) for p in hom_factors(A, A, 0)])
    return ChainMap(E, H, {0: col} if H.in_window(0) else {}, check=False)


# --------------------------------------------------------------------------
# homology and elementary constructions


def homology(X: ChainComplex, n: int) -> PresentedModule:
    return homology_at(X.diff(n + 1), X.diff(n))


def is_acyclic(X: ChainComplex) -> bool:
    return all(homology(X, n).is_zero() for n in X.degrees())


def shift(X: ChainComplex, k: int) -> ChainComplex:
    """``shift(X, k)_n = X_{n-k}`` with differentials multiplied by ``(-1)^k``."""
    diffs = {n + k: (-X.diff(n) if k % 2 else X.diff(n)) for n in range(X.lo + 1, X.hi + 1)}
    return ChainComplex(X.ring, X.lo + k, list(X._ranks), diffs, check=False)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k),
                    {n + k: f.component(n) for n in f.degrees()}, check=False)


def direct_sum(Xs: Sequence[ChainComplex]) -> ChainComplex:
    if not Xs:
        raise ValueError("direct_sum of an empty family")
    ring = _same_ring(*Xs)
    live = [X for X in Xs if X.hi >= X.lo]
    if not live:
        return ChainComplex.zero(ring)
    lo, hi = min(X.lo for X in live), max(X.hi for X in live)
    ranks = [sum(X.rank(n) for X in Xs) for n in range(lo, hi + 1)]
    diffs = {n: block_diag(ring, [X.diff(n) for X in Xs]) for n in range(lo + 1, hi + 1)}
    return ChainComplex(ring, lo, ranks, diffs, check=False)


def direct_sum_maps(fs: Sequence[ChainMap]) -> ChainMap:
    S = direct_sum([f.source for f in fs])
    T = direct_sum([f.target for f in fs])
    degs = set(S.degrees()) | set(T.degrees())
    return ChainMap(S, T, {n: block_diag(S.ring, [f.component(n) for f in fs]) for n in degs},
                    check=False)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """``cone(f)_n = X_{n-1} (+) Y_n`` with ``d = [[-d^X, 0], [f, d^Y]]``."""
    X, Y = f.source, f.target
    ring = f.ring
    spans = ([(X.lo + 1, X.hi + 1)] if X.hi >= X.lo else []) + ([(Y.lo, Y.hi)] if Y.hi >= Y.lo else [])
    if not spans:
        return ChainComplex.zero(ring)
    lo, hi = min(s[0] for s in spans), max(s[1] for s in spans)
    ranks = [X.rank(n - 1) + Y.rank(n) for n in range(lo, hi + 1)]
    diffs = {}
    for n in range(lo + 1, hi + 1):
        diffs[n] = assemble(ring, [X.rank(n - 2), Y.rank(n - 1)], [X.rank(n - 1), Y.rank(n)], {
            (0, 0): -X.diff(n - 1), (1, 0): f.component(n - 1), (1, 1): Y.diff(n)})
    return ChainComplex(ring, lo, ranks, diffs, check=False)


def cone_inclusion(f: ChainMap) -> ChainMap:
    """The canonical map ``Y -> cone(f)``."""
    Y = f.target
    C = mapping_cone(f)
    ring = f.ring
    comps = {n: assemble(ring, [f.source.rank(n - 1), Y.rank(n)], [Y.rank(n)],
                         {(1, 0): Matrix.identity(ring, Y.rank(n))}) for n in C.degrees()}
    return ChainMap(Y, C, comps, check=False)


def disk_complex(g: VObject, n: int) -> ChainComplex:
    """``g`` in degrees ``n`` and ``n - 1`` joined by the identity."""
    if g.rank == 0:
        return ChainComplex(g.ring, n - 1, [0, 0])
    return ChainComplex(g.ring, n - 1, [g.rank, g.rank],
                        {n: Matrix.identity(g.ring, g.rank)}, check=False)


def complex_from_matrices(ring: RingSpec, lo: int, diffs: Sequence[Matrix],
                          top_rank: int | None = None) -> ChainComplex:
    """Complex in degrees ``lo..`` from ``[d_{lo+1}, d_{lo+2}, ...]``."""
    if not diffs:
        return ChainComplex(ring, lo, [top_rank or 0])
    ranks = [diffs[0].nrows] + [d.ncols for d in diffs]
    return ChainComplex(ring, lo, ranks, {lo + 1 + i: d for i, d in enumerate(diffs)})
