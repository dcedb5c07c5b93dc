"""The enriched functor category [C, V].

Functor objects are :class:`VFunctor` values with codomain V and morphisms
are :class:`VNat` values.  Hom objects are computed as the kernel of the
standard equalizer pair, so elements of ``hom_end(X, Y)`` are coordinates of
natural transformations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import base
from .enriched import (VCategory, VFunctor, VNat, check_category_axioms, check_functor_axioms,
                       check_vnat, functor_from_actions, representable)
from .errors import AxiomError
from .linalg import (Matrix, ShapeError, RingMismatch, block_diag, cokernel_projection, hstack,
                     kernel_with_retraction, kronecker, vstack)
from .report import Failure, Report


def _same_source(X: VFunctor, Y: VFunctor) -> VCategory:
    if X.target is not None or Y.target is not None:
        raise ShapeError("functor-category operations need functors into V")
    if X.source is not Y.source and X.source != Y.source:
        raise ShapeError("functors live on different categories")
    return X.source


# --------------------------------------------------------------------------
# Hom objects as ends


@dataclass(frozen=True)
class EndPresentation:
    """``hom_end(X, Y)`` as a saturated sublattice of ``prod_c [X c, Y c]``.

    ``inclusion`` has the kernel basis as columns; ``retraction @ inclusion``
    is the identity.  ``offsets[c]`` locates the block of ``[X c, Y c]``.
    """

    source: VFunctor
    target: VFunctor
    equalizer: Matrix
    inclusion: Matrix
    retraction: Matrix
    offsets: dict = field(hash=False)

    @property
    def rank(self) -> int:
        return self.inclusion.ncols

    @property
    def ambient_rank(self) -> int:
        return self.inclusion.nrows

    def obj(self) -> base.VObject:
        return base.VObject(self.source.ring, self.rank, "end")

    def ambient_to_nat(self, v: Sequence) -> VNat:
        X, Y = self.source, self.target
        comps = {}
        for c in X.source.objects:
            o = self.offsets[c]
            n = X.rank(c) * Y.rank(c)
            comps[c] = base.unvec(v[o:o + n], X.rank(c), Y.rank(c), X.ring)
        return VNat(X, Y, comps)

    def nat_to_ambient(self, alpha: VNat) -> tuple:
        out = []
        for c in self.source.source.objects:
            out.extend(x for (x,) in base.vec(alpha.component(c)).rows)
        return tuple(out)

    def element_to_nat(self, v: Sequence) -> VNat:
        col = Matrix(self.source.ring, [[x] for x in v], self.rank, 1)
        return self.ambient_to_nat([x for (x,) in (self.inclusion @ col).rows])

    def nat_to_element(self, alpha: VNat) -> tuple:
        amb = self.nat_to_ambient(alpha)
        col = Matrix(self.source.ring, [[x] for x in amb], self.ambient_rank, 1)
        if not (self.equalizer @ col).is_zero():
            raise ValueError("transformation is not natural")
        return tuple(x for (x,) in (self.retraction @ col).rows)

    def basis(self) -> list[VNat]:
        return [self.ambient_to_nat(self.inclusion.column(j)) for j in range(self.rank)]


def end_presentation(X: VFunctor, Y: VFunctor) -> EndPresentation:
    """Kernel of ``u - v`` where ``u`` postcomposes with ``Y_ab`` and ``v`` precomposes with ``X_ab``.

    Column ``(c, i, j)`` of the equalizer is the naturality defect of the
    elementary family sending ``e_i`` of ``X c`` to ``e_j`` of ``Y c``.
    """
    C = _same_source(X, Y)
    ring = C.ring
    offsets, amb = {}, 0
    for c in C.objects:
        offsets[c] = amb
        amb += X.rank(c) * Y.rank(c)
    row_sizes = [C.rank(a, b) * X.rank(a) * Y.rank(b) for a in C.objects for b in C.objects]
    # precompute every action matrix once
    xact = {(a, b): [X.action(a, b, s) for s in range(C.rank(a, b))]
            for a in C.objects for b in C.objects}
    yact = {(a, b): [Y.action(a, b, s) for s in range(C.rank(a, b))]
            for a in C.objects for b in C.objects}
    columns = []
    for c in C.objects:
        xc, yc = X.rank(c), Y.rank(c)
        for i in range(xc):
            for j in range(yc):
                col = []
                for a in C.objects:
                    for b in C.objects:
                        xa, yb = X.rank(a), Y.rank(b)
                        for s in range(C.rank(a, b)):
                            block = [ring.zero] * (xa * yb)
                            if b == c:
                                # alpha_b o X_ab(s): row j of alpha is e_i^T
                                m = xact[(a, b)][s]
                                for p in range(xa):
                                    block[p * yb + j] = ring.norm(block[p * yb + j] + m.rows[i][p])
                            if a == c:
                                # Y_ab(s) o alpha_a: column i of alpha is e_j
                                m = yact[(a, b)][s]
                                for q in range(yb):
                                    block[i * yb + q] = ring.norm(block[i * yb + q] - m.rows[q][j])
                            col.extend(block)
                columns.append(col)
    D = Matrix.from_columns(ring, sum(row_sizes), columns) if columns else \
        Matrix.zeros(ring, sum(row_sizes), 0)
    K, L = kernel_with_retraction(D)
    return EndPresentation(X, Y, D, K, L, offsets)


def hom_end(X: VFunctor, Y: VFunctor) -> base.VObject:
    return end_presentation(X, Y).obj()


def nat_from_underlying(X: VFunctor, Y: VFunctor, components) -> VNat:
    """Validated natural transformation; raises if the square fails."""
    alpha = VNat(X, Y, components)
    rep = check_vnat(alpha)
    if not rep.ok:
        raise ValueError(str(rep.failures[0]))
    return alpha


# --------------------------------------------------------------------------
# the closed-module action


def _tensor_id_matrix(ring, ra: int, rb: int, m: int) -> Matrix:
    """``[a, b] -> [a (x) A, b (x) A]``, ``f |-> f (x) id_A`` with ``rank(A) = m``."""
    n_out = ra * m * rb * m
    cols = []
    for i in range(ra):
        for j in range(rb):
            col = [ring.zero] * n_out
            for s in range(m):
                col[(i * m + s) * (rb * m) + (j * m + s)] = ring.one
            cols.append(col)
    return Matrix.from_columns(ring, n_out, cols) if cols else Matrix.zeros(ring, n_out, 0)


def oslash(X: VFunctor, A: base.VObject) -> VFunctor:
    """Pointwise ``X(c) (x) A`` with structure maps ``X_ab(-) (x) id_A``."""
    C = X.source
    if A.ring != X.ring:
        raise RingMismatch(f"{A.ring} vs {X.ring}")
    m = A.rank
    ranks = {c: X.rank(c) * m for c in C.objects}
    maps = {(a, b): _tensor_id_matrix(X.ring, X.rank(a), X.rank(b), m) @ X.hom_map(a, b)
            for a in C.objects for b in C.objects}
    return VFunctor(C, ranks, maps)


def oslash_map(alpha: VNat, g: Matrix, A: base.VObject | None = None,
               B: base.VObject | None = None) -> VNat:
    """``alpha (/) g: X (/) A -> Y (/) B`` with components ``alpha_c (x) g``."""
    A = A or base.VObject(alpha.source.ring, g.ncols)
    B = B or base.VObject(alpha.source.ring, g.nrows)
    src, tgt = oslash(alpha.source, A), oslash(alpha.target, B)
    return VNat(src, tgt, {c: kronecker(alpha.component(c), g) for c in alpha.category.objects})


def oslash_assoc(X: VFunctor, A: base.VObject, B: base.VObject) -> VNat:
    """``(X (/) A) (/) B -> X (/) (A (x) B)``, componentwise the tensor associator."""
    src = oslash(oslash(X, A), B)
    tgt = oslash(X, base.tensor_obj(A, B))
    comps = {}
    for c in X.source.objects:
        xc = base.VObject(X.ring, X.rank(c))
        comps[c] = base.structure_isos(xc, A, B).assoc.matrix
    return VNat(src, tgt, comps)


def oslash_unit(X: VFunctor) -> VNat:
    """``X (/) e -> X`` via the right unitor."""
    e = base.unit_object(X.ring)
    return VNat(oslash(X, e), X, {c: base.structure_isos(base.VObject(X.ring, X.rank(c)), e, e)
                                  .right_unit.matrix for c in X.source.objects})


@dataclass
class AdjunctionWitness:
    """Mutually inverse maps between ``Nat(X (/) A, Y)`` and ``Hom_V(A, hom_end(X, Y))`` in coordinates."""

    forward: Matrix
    backward: Matrix
    report: Report


def oslash_adjunction(X: VFunctor, A: base.VObject, Y: VFunctor) -> AdjunctionWitness:
    """Transpose natural transformations out of ``X (/) A`` and check the round trips.

    ``beta`` goes to ``g`` with ``g(e_t)`` the transformation ``beta_c o (id (x) e_t)``.
    Both sides are handled in coordinates: the left side through
    ``end_presentation(X (/) A, Y)``, the right side as matrices
    ``A -> hom_end(X, Y)`` flattened column-major.
    """
    ring = X.ring
    XA = oslash(X, A)
    left = end_presentation(XA, Y)
    right = end_presentation(X, Y)
    m, k = A.rank, right.rank
    C = X.source
    fwd_cols = []
    for beta in left.basis():
        cols = []
        for t in range(m):
            et = Matrix.from_columns(ring, m, [[ring.one if s == t else ring.zero
                                                for s in range(m)]])
            comps = {c: beta.component(c) @ kronecker(Matrix.identity(ring, X.rank(c)), et)
                     for c in C.objects}
            cols.extend(right.nat_to_element(VNat(X, Y, comps)))
        fwd_cols.append(cols)
    forward = Matrix.from_columns(ring, m * k, fwd_cols) if fwd_cols else Matrix.zeros(ring, m * k, 0)
    bwd_cols = []
    for t in range(m):
        for r in range(k):
            nat = right.element_to_nat([ring.one if q == r else ring.zero for q in range(k)])
            comps = {}
            for c in C.objects:
                # beta_c(x (x) e_s) = g(e_s)_c(x) where g(e_t) = basis element r
                et_row = Matrix(ring, [[ring.one if s == t else ring.zero for s in range(m)]])
                comps[c] = kronecker(nat.component(c), et_row)
            bwd_cols.append(left.nat_to_element(VNat(XA, Y, comps)))
    backward = Matrix.from_columns(ring, left.rank, bwd_cols) if bwd_cols else \
        Matrix.zeros(ring, left.rank, 0)
    rep = Report("closed-module adjunction for the action of V on [C, V]")
    rep.checked = 2
    if backward @ forward != Matrix.identity(ring, left.rank):
        rep.add(Failure("adjunction round trip on Nat(X (/) A, Y)"))
    if forward @ backward != Matrix.identity(ring, m * k):
        rep.add(Failure("adjunction round trip on Hom(A, hom_end(X, Y))"))
    return AdjunctionWitness(forward, backward, rep)


# --------------------------------------------------------------------------
# evaluation and pointwise (co)limits


def evaluate(X: VFunctor, c: str) -> base.VObject:
    X.source.require(c)
    return X.obj(c)


def evaluate_nat(alpha: VNat, c: str) -> Matrix:
    alpha.category.require(c)
    return alpha.component(c)


def zero_functor(C: VCategory) -> VFunctor:
    return VFunctor(C, {c: 0 for c in C.objects}, {})


def _conjugated(C: VCategory, X: VFunctor, ranks, post, pre) -> VFunctor:
    """Functor with action ``post[b] @ X(s) @ pre[a]`` on basis arrows ``s: a -> b``."""
    actions = {(a, b): [post[b] @ X.action(a, b, s) @ pre[a] for s in range(C.rank(a, b))]
               for a in C.objects for b in C.objects}
    return functor_from_actions(C, ranks, actions)


@dataclass(frozen=True)
class SumCone:
    total: VFunctor
    injections: tuple
    projections: tuple


def pointwise_sum(Xs: Sequence[VFunctor]) -> SumCone:
    if not Xs:
        raise ShapeError("empty direct sum needs a category; use zero_functor")
    C = Xs[0].source
    for X in Xs[1:]:
        _same_source(Xs[0], X)
    ring = C.ring
    ranks = {c: sum(X.rank(c) for X in Xs) for c in C.objects}
    actions = {(a, b): [block_diag(ring, [X.action(a, b, s) for X in Xs])
                        for s in range(C.rank(a, b))]
               for a in C.objects for b in C.objects}
    total = functor_from_actions(C, ranks, actions)
    inj, proj = [], []
    for k, X in enumerate(Xs):
        ic, pc = {}, {}
        for c in C.objects:
            before = sum(Y.rank(c) for Y in Xs[:k])
            sel = Matrix.zeros(ring, ranks[c], X.rank(c))
            rows = [list(r) for r in sel.rows]
            for i in range(X.rank(c)):
                rows[before + i][i] = ring.one
            ic[c] = Matrix(ring, rows, ranks[c], X.rank(c))
            pc[c] = ic[c].T
        inj.append(VNat(X, total, ic))
        proj.append(VNat(total, X, pc))
    return SumCone(total, tuple(inj), tuple(proj))


def pointwise_sum_maps(alphas: Sequence[VNat]) -> VNat:
    src = pointwise_sum([a.source for a in alphas]).total
    tgt = pointwise_sum([a.target for a in alphas]).total
    ring = src.ring
    return VNat(src, tgt, {c: block_diag(ring, [a.component(c) for a in alphas])
                           for c in src.source.objects})


@dataclass(frozen=True)
class KernelCone:
    kernel: VFunctor
    inclusion: VNat
    retractions: dict = field(hash=False)


def pointwise_kernel(alpha: VNat) -> KernelCone:
    C = alpha.category
    Ks, Ls = {}, {}
    for c in C.objects:
        Ks[c], Ls[c] = kernel_with_retraction(alpha.component(c))
    ranks = {c: Ks[c].ncols for c in C.objects}
    kern = _conjugated(C, alpha.source, ranks, Ls, Ks)
    return KernelCone(kern, VNat(kern, alpha.source, Ks), Ls)


def factor_through_kernel(cone: KernelCone, beta: VNat) -> VNat:
    """The unique ``W -> ker`` through which ``beta: W -> X`` factors, given ``alpha o beta = 0``."""
    comps = {}
    for c in beta.category.objects:
        comps[c] = cone.retractions[c] @ beta.component(c)
        if cone.inclusion.component(c) @ comps[c] != beta.component(c):
            raise ValueError(f"map does not land in the kernel at {c}")
    return VNat(beta.source, cone.kernel, comps)


@dataclass(frozen=True)
class CokernelCone:
    cokernel: VFunctor
    projection: VNat
    sections: dict = field(hash=False)


def pointwise_cokernel(alpha: VNat) -> CokernelCone:
    """Raises ``ValueError`` when some pointwise cokernel has torsion."""
    C = alpha.category
    Ps, Ss = {}, {}
    for c in C.objects:
        Ps[c], Ss[c] = cokernel_projection(alpha.component(c))
    ranks = {c: Ps[c].nrows for c in C.objects}
    cok = _conjugated(C, alpha.target, ranks, Ps, Ss)
    return CokernelCone(cok, VNat(alpha.target, cok, Ps), Ss)


def factor_through_cokernel(cone: CokernelCone, beta: VNat) -> VNat:
    """The unique ``coker -> W`` through which ``beta: Y -> W`` factors, given ``beta o alpha = 0``."""
    comps = {}
    for c in beta.category.objects:
        comps[c] = beta.component(c) @ cone.sections[c]
        if comps[c] @ cone.projection.component(c) != beta.component(c):
            raise ValueError(f"map does not vanish on the image at {c}")
    return VNat(cone.cokernel, beta.target, comps)


# --------------------------------------------------------------------------
# Yoneda and the coend decomposition


@dataclass
class IsoWitness:
    """Coordinate matrices of mutually inverse maps, per object where relevant."""

    forward: dict
    backward: dict
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok


def _require_axioms(C: VCategory, *Xs: VFunctor):
    rep = check_category_axioms(C)
    if not rep.ok:
        raise AxiomError(f"category fails its axioms: {rep.failures[0]}")
    for X in Xs:
        rep = check_functor_axioms(X)
        if not rep.ok:
            raise AxiomError(f"functor fails its axioms: {rep.failures[0]}")


def yoneda_check(C: VCategory, c: str, X: VFunctor) -> IsoWitness:
    """``X(c) ~ hom_end(hom(c, -), X)`` via ``x |-> (f |-> X(f) x)`` and ``alpha |-> alpha_c(u_c)``."""
    C.require(c)
    _require_axioms(C, X)
    ring = C.ring
    R = representable(C, c)
    end = end_presentation(R, X)
    xc = X.rank(c)
    phi_cols = []
    for i in range(xc):
        comps = {}
        for d in C.objects:
            cols = [X.action(c, d, s).column(i) for s in range(C.rank(c, d))]
            comps[d] = Matrix.from_columns(ring, X.rank(d), cols) if cols else \
                Matrix.zeros(ring, X.rank(d), 0)
        phi_cols.append(end.nat_to_element(VNat(R, X, comps)))
    phi = Matrix.from_columns(ring, end.rank, phi_cols) if phi_cols else Matrix.zeros(ring, end.rank, 0)
    psi_cols = []
    for alpha in end.basis():
        psi_cols.append((alpha.component(c) @ C.unit(c)).column(0))
    psi = Matrix.from_columns(ring, xc, psi_cols) if psi_cols else Matrix.zeros(ring, xc, 0)
    rep = Report("enriched Yoneda isomorphism")
    rep.checked = 2
    if psi @ phi != Matrix.identity(ring, xc):
        rep.add(Failure("Yoneda round trip on X(c)", (c,), psi @ phi - Matrix.identity(ring, xc)))
    if phi @ psi != Matrix.identity(ring, end.rank):
        rep.add(Failure("Yoneda round trip on hom_end", (c,),
                        phi @ psi - Matrix.identity(ring, end.rank)))
    return IsoWitness({c: phi}, {c: psi}, rep)


def coend_pair(C: VCategory, X: VFunctor, d: str) -> tuple[Matrix, Matrix]:
    """The two legs ``sum_{a,b} hom(b,d) (x) hom(a,b) (x) X(a) => sum_c hom(c,d) (x) X(c)`` at ``d``.

    The first leg lets ``hom(a, b)`` act on ``X(a)``; the second composes it
    with ``hom(b, d)``.
    """
    ring = C.ring
    obs = C.objects
    tgt_sizes = [C.rank(c, d) * X.rank(c) for c in obs]
    tgt_off = {c: sum(tgt_sizes[:k]) for k, c in enumerate(obs)}
    n_tgt = sum(tgt_sizes)
    act_blocks, comp_blocks = [], []
    for a in obs:
        for b in obs:
            hbd, hab, xa = C.rank(b, d), C.rank(a, b), X.rank(a)
            n_src = hbd * hab * xa
            act = base.adjoint_inv_matrix(X.hom_map(a, b), hab, xa, X.rank(b))
            leg = kronecker(Matrix.identity(ring, hbd), act)
            act_blocks.append(_place(ring, leg, tgt_off[b], n_tgt, n_src))
            cmp = C.comp(a, b, d) @ base.swap_matrix(ring, hbd, hab)
            leg = kronecker(cmp, Matrix.identity(ring, xa))
            comp_blocks.append(_place(ring, leg, tgt_off[a], n_tgt, n_src))
    return hstack(ring, n_tgt, act_blocks), hstack(ring, n_tgt, comp_blocks)


def _place(ring, M: Matrix, row0: int, nrows: int, ncols: int) -> Matrix:
    pieces = [Matrix.zeros(ring, row0, ncols), M,
              Matrix.zeros(ring, nrows - row0 - M.nrows, ncols)]
    return vstack(ring, ncols, pieces)


def _coend_action(C: VCategory, X: VFunctor, d: str) -> Matrix:
    """``sum_c hom(c, d) (x) X(c) -> X(d)``, ``g (x) x |-> X(g) x``."""
    ring = C.ring
    blocks = []
    for c in C.objects:
        m = base.adjoint_inv_matrix(X.hom_map(c, d), C.rank(c, d), X.rank(c), X.rank(d))
        # adjoint_inv yields hom (x) X(c) ordering, matching the summand basis
        blocks.append(m)
    return hstack(ring, X.rank(d), blocks)


def _coend_unit_inclusion(C: VCategory, X: VFunctor, d: str) -> Matrix:
    """``X(d) -> sum_c hom(c, d) (x) X(c)``, ``x |-> u_d (x) x`` in the summand ``c = d``."""
    ring = C.ring
    n_tgt = sum(C.rank(c, d) * X.rank(c) for c in C.objects)
    off = 0
    for c in C.objects:
        if c == d:
            break
        off += C.rank(c, d) * X.rank(c)
    return _place(ring, kronecker(C.unit(d), Matrix.identity(ring, X.rank(d))), off, n_tgt,
                  X.rank(d))


def coend_functor(C: VCategory, X: VFunctor) -> tuple[VFunctor, dict, dict]:
    """The coend as a functor, with pointwise projections and sections."""
    ring = C.ring
    Ps, Ss = {}, {}
    for d in C.objects:
        l1, l2 = coend_pair(C, X, d)
        Ps[d], Ss[d] = cokernel_projection(l1 - l2)
    ranks = {d: Ps[d].nrows for d in C.objects}
    actions = {}
    for d in C.objects:
        for d2 in C.objects:
            mats = []
            for s in range(C.rank(d, d2)):
                h = Matrix.from_columns(ring, C.rank(d, d2),
                                        [[ring.one if t == s else ring.zero
                                          for t in range(C.rank(d, d2))]])
                blocks = []
                for c in C.objects:
                    post = C.comp(c, d, d2) @ kronecker(Matrix.identity(ring, C.rank(c, d)), h)
                    blocks.append(kronecker(post, Matrix.identity(ring, X.rank(c))))
                mats.append(Ps[d2] @ block_diag(ring, blocks) @ Ss[d])
            actions[(d, d2)] = mats
    return functor_from_actions(C, ranks, actions), Ps, Ss


def coend_check(C: VCategory, X: VFunctor) -> IsoWitness:
    """The coend of ``hom(c, -) (/) X(c)`` is isomorphic to ``X``, naturally."""
    _require_axioms(C, X)
    ring = C.ring
    rep = Report("coend decomposition into representables")
    E, Ps, Ss = coend_functor(C, X)
    fwd, bwd = {}, {}
    for d in C.objects:
        l1, l2 = coend_pair(C, X, d)
        act = _coend_action(C, X, d)
        rep.checked += 3
        if not (act @ (l1 - l2)).is_zero():
            rep.add(Failure("action map coequalizes the pair", (d,), act @ (l1 - l2)))
        fwd[d] = act @ Ss[d]
        bwd[d] = Ps[d] @ _coend_unit_inclusion(C, X, d)
        if fwd[d] @ bwd[d] != Matrix.identity(ring, X.rank(d)):
            rep.add(Failure("coend round trip on X", (d,)))
        if bwd[d] @ fwd[d] != Matrix.identity(ring, E.rank(d)):
            rep.add(Failure("coend round trip on the coend", (d,)))
    rep.checked += 2
    nat = check_vnat(VNat(E, X, fwd))
    if not nat.ok:
        rep.add(Failure("coend comparison is natural", detail=str(nat.failures[0])))
    fun = check_functor_axioms(E)
    if not fun.ok:
        rep.add(Failure("coend is a functor", detail=str(fun.failures[0])))
    return IsoWitness(fwd, bwd, rep)


__all__ = [
    "EndPresentation", "end_presentation", "hom_end", "oslash", "oslash_map", "oslash_assoc",
    "oslash_unit", "oslash_adjunction", "evaluate", "evaluate_nat", "zero_functor",
    "pointwise_sum", "pointwise_sum_maps", "pointwise_kernel", "pointwise_cokernel",
    "factor_through_kernel", "factor_through_cokernel", "yoneda_check", "coend_check",
    "coend_pair", "coend_functor", "IsoWitness", "nat_from_underlying",
]
