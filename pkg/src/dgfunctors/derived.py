"""Derived Homs out of bounded complexes of free modules.

Bounded complexes of finitely generated free modules are K-projective, so
chain-homotopy classes of maps out of them compute morphisms in the derived
category.  Every computation here works with bounded windows and finite
direct sums; reports state this restriction in their header.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .chains import (ChainComplex, ChainMap, hom_chainmap, hom_complex, hom_factors, homology,
                     identity_map, mapping_cone, is_acyclic)
from .enriched import VCategory, representable
from .functors import end_presentation, oslash, pointwise_sum, pointwise_sum_maps
from .linalg import (Matrix, PresentedModule, RingMismatch, ShapeError, hstack,
                     kernel_with_retraction, kronecker, solve)
from .report import Failure, Report
from .translation import FunctorChainMap, FunctorComplex

SCALE_NOTE = "windows are bounded and coproducts finite; unbounded statements are not checked"


def _check_generator(Q: ChainComplex):
    if not isinstance(Q, ChainComplex):
        raise TypeError("generator must be a bounded complex of free modules")


def derived_hom_V(Q: ChainComplex, X: ChainComplex, n: int) -> PresentedModule:
    """``H_n Hom(Q, X)``, the derived Hom for a bounded free ``Q``."""
    _check_generator(Q)
    if Q.ring != X.ring:
        raise RingMismatch(f"{Q.ring} vs {X.ring}")
    return homology(hom_complex(Q, X), n)


def evaluate_complex(X: FunctorComplex, c: str) -> ChainComplex:
    return X.at(c)


def generator_object(C: VCategory, c: str, Q: ChainComplex) -> FunctorComplex:
    """Levels ``hom(c, -) (/) Q_n`` with differentials ``id (/) d^Q_n``."""
    C.require(c)
    _check_generator(Q)
    R = representable(C, c)
    levels = [oslash(R, Q.entry(n)) for n in Q.degrees()]
    diffs = {n: {d: kronecker(Matrix.identity(C.ring, C.rank(c, d)), Q.diff(n)) for d in C.objects}
             for n in range(Q.lo + 1, Q.hi + 1)}
    return FunctorComplex(C, Q.lo, levels, diffs, check=False)


class FunctorHomComplex:
    """``Hom(G, H)_n = prod_p hom_end(G_p, H_{p+n})`` in coordinates of the ends.

    ``ends[(n, p)]`` is the end presentation of the factor; ``complex`` is the
    resulting chain complex of free modules.
    """

    def __init__(self, G: FunctorComplex, H: FunctorComplex):
        if G.category != H.category:
            raise ShapeError("complexes of functors on different categories")
        self.G, self.H = G, H
        ring = G.ring
        self.ring = ring
        lo, hi = H.lo - G.hi, H.hi - G.lo
        self.lo, self.hi = lo, hi
        self.ends = {}
        self.factors = {}
        for n in range(lo - 1, hi + 1):
            ps = [p for p in G.degrees() if H.lo <= p + n <= H.hi]
            self.factors[n] = ps
            for p in ps:
                self.ends[(n, p)] = end_presentation(G.level(p), H.level(p + n))
        ranks = [self.rank(n) for n in range(lo, hi + 1)]
        diffs = {n: self._diff(n) for n in range(lo + 1, hi + 1)}
        self.complex = ChainComplex(ring, lo, ranks, diffs, check=False)

    def rank(self, n: int) -> int:
        return sum(self.ends[(n, p)].rank for p in self.factors.get(n, []))

    def split(self, n: int, v: Sequence) -> dict:
        """Element coordinates in degree ``n`` to natural transformations per factor."""
        out, pos = {}, 0
        for p in self.factors[n]:
            e = self.ends[(n, p)]
            out[p] = e.element_to_nat(v[pos:pos + e.rank])
            pos += e.rank
        return out

    def join(self, n: int, nats: dict) -> tuple:
        out = []
        for p in self.factors[n]:
            e = self.ends[(n, p)]
            if p in nats:
                out.extend(e.nat_to_element(nats[p]))
            else:
                out.extend([self.ring.zero] * e.rank)
        return tuple(out)

    def _diff(self, n: int) -> Matrix:
        """``d(f)_p = d^H_{p+n} o f_p - (-1)^n f_{p-1} o d^G_p``."""
        G, H = self.G, self.H
        sign = -1 if n % 2 else 1
        cols = []
        rank_n = self.rank(n)
        for j in range(rank_n):
            v = [self.ring.one if i == j else self.ring.zero for i in range(rank_n)]
            f = self.split(n, v)
            out = {}
            for p in self.factors[n - 1]:
                terms = []
                if p in f:
                    terms.append(H.diff(p + n) @ f[p])
                if p - 1 in f:
                    t = f[p - 1] @ G.diff(p)
                    terms.append(t.scale(-sign))
                if terms:
                    acc = terms[0]
                    for t in terms[1:]:
                        acc = acc + t
                    out[p] = acc
            cols.append(self.join(n - 1, out))
        return Matrix.from_columns(self.ring, self.rank(n - 1), cols) if cols else \
            Matrix.zeros(self.ring, self.rank(n - 1), 0)

    def postcompose(self, g: FunctorChainMap, other: "FunctorHomComplex") -> ChainMap:
        """``Hom(G, g): Hom(G, H) -> Hom(G, H')`` in end coordinates."""
        comps = {}
        for n in set(self.complex.degrees()) | set(other.complex.degrees()):
            rank_n = self.rank(n) if n in self.factors else 0
            cols = []
            for j in range(rank_n):
                v = [self.ring.one if i == j else self.ring.zero for i in range(rank_n)]
                f = self.split(n, v)
                out = {p: g.component(p + n) @ f[p] for p in f if p in other.factors.get(n, [])}
                cols.append(other.join(n, out) if n in other.factors else ())
            nrows = other.rank(n) if n in other.factors else 0
            comps[n] = Matrix.from_columns(self.ring, nrows, cols) if cols else \
                Matrix.zeros(self.ring, nrows, 0)
        return ChainMap(self.complex, other.complex, comps, check=False)


def functor_hom_complex(G: FunctorComplex, H: FunctorComplex) -> ChainComplex:
    return FunctorHomComplex(G, H).complex


def derived_hom_functor_cat(C: VCategory, c: str, Q: ChainComplex, X: FunctorComplex,
                            n: int) -> PresentedModule:
    """``H_n`` of the Hom complex from ``hom(c, -) (/) Q`` to ``X``, built from ends."""
    if X.category != C:
        raise ShapeError("complex of functors lives on a different category")
    gen = generator_object(C, c, Q)
    return homology(functor_hom_complex(gen, X), n)


# --------------------------------------------------------------------------


def _yoneda_chain_iso(C: VCategory, c: str, Q: ChainComplex, FH: FunctorHomComplex,
                      base_hom: ChainComplex) -> ChainMap:
    """Degreewise ``alpha |-> alpha_c o (u_c (x) id)`` from end coordinates to ``Hom(Q, X(c))``."""
    ring = C.ring
    X = FH.H
    Xc = X.at(c)
    comps = {}
    for n in set(FH.complex.degrees()) | set(base_hom.degrees()):
        base_facs = hom_factors(Q, Xc, n)
        rank_n = FH.rank(n) if n in FH.factors else 0
        base_rank = base_hom.rank(n)
        cols = []
        for j in range(rank_n):
            v = [ring.one if i == j else ring.zero for i in range(rank_n)]
            f = FH.split(n, v)
            col = []
            for p in base_facs:
                if p in f:
                    m = f[p].component(c) @ kronecker(C.unit(c), Matrix.identity(ring, Q.rank(p)))
                else:
                    m = Matrix.zeros(ring, Xc.rank(p + n), Q.rank(p))
                col.extend(x for i in range(m.ncols) for x in m.column(i))
            cols.append(col)
        comps[n] = Matrix.from_columns(ring, base_rank, cols) if cols else \
            Matrix.zeros(ring, base_rank, 0)
    return ChainMap(FH.complex, base_hom, comps, check=False)


def natural_iso_check(C: VCategory, c: str, Q: ChainComplex, X: FunctorComplex,
                      degrees: Iterable[int], test_morphism: FunctorChainMap | None = None) -> Report:
    """Compare Homs out of the generator ``hom(c, -) (/) Q`` with Homs out of ``Q`` at ``X(c)``.

    The functor side is built from ends; the base side from the ordinary Hom
    complex of ``Q`` and ``X(c)``.  Besides comparing homology, the chain-level
    comparison map is checked to be a chain isomorphism and natural in ``X``
    against ``test_morphism`` when given.
    """
    C.require(c)
    rep = Report("generator natural isomorphism: Hom from hom(c,-)(/)Q to X versus Hom from Q "
                 "to X(c)", notes=[SCALE_NOTE])
    gen = generator_object(C, c, Q)
    FH = FunctorHomComplex(gen, X)
    Xc = evaluate_complex(X, c)
    base_hom = hom_complex(Q, Xc)
    for n in degrees:
        left = homology(FH.complex, n)
        right = derived_hom_V(Q, Xc, n)
        rep.checked += 1
        if left != right:
            rep.add(Failure("homology comparison", (c, n), detail=f"{left} != {right}"))
    theta = _yoneda_chain_iso(C, c, Q, FH, base_hom)
    rep.checked += 2
    bad = theta.chain_defect()
    if bad is not None:
        rep.add(Failure("comparison map commutes with d", (c, bad)))
    for n in sorted(set(theta.degrees())):
        m = theta.component(n)
        if m.nrows != m.ncols or solve(m, Matrix.identity(m.ring, m.nrows)) is None:
            rep.add(Failure("comparison map is invertible", (c, n)))
            break
    if test_morphism is not None:
        X2 = test_morphism.target
        FH2 = FunctorHomComplex(gen, X2)
        base2 = hom_complex(Q, X2.at(c))
        theta2 = _yoneda_chain_iso(C, c, Q, FH2, base2)
        left = theta2 @ FH.postcompose(test_morphism, FH2)
        right = hom_chainmap(identity_map(Q), test_morphism.at(c)) @ theta
        rep.checked += 1
        for n in sorted(set(left.degrees()) | set(right.degrees())):
            if left.component(n) != right.component(n):
                rep.add(Failure("naturality in X", (c, n), left.component(n) - right.component(n)))
                break
    return rep


# --------------------------------------------------------------------------
# quasi-isomorphisms and acyclicity


def _induced_iso(f: ChainMap, n: int) -> bool:
    """Whether ``H_n(f)`` is an isomorphism, decided on cycle lattices."""
    X, Y = f.source, f.target
    ring = f.ring
    KX, LX = kernel_with_retraction(X.diff(n))
    KY, LY = kernel_with_retraction(Y.diff(n))
    BX = LX @ X.diff(n + 1)          # boundaries in cycle coordinates
    BY = LY @ Y.diff(n + 1)
    F = LY @ f.component(n) @ KX     # induced map on cycles
    zx, zy = KX.ncols, KY.ncols
    A = hstack(ring, zy, [F, BY])
    # surjective: image of F together with boundaries is every cycle
    if zy and solve(A, Matrix.identity(ring, zy)) is None:
        return False
    # injective: cycles sent into boundaries are boundaries
    K = kernel_with_retraction(A)[0]
    pre = K.block(0, zx, 0, K.ncols)
    return pre.ncols == 0 or zx == 0 or solve(BX, pre) is not None


def is_quasi_iso(f, cross_check: bool = True) -> bool:
    """Homology isomorphism in every degree; pointwise for complexes of functors."""
    if isinstance(f, FunctorChainMap):
        return all(is_quasi_iso(f.at(c), cross_check) for c in f.source.category.objects)
    if f.chain_defect() is not None:
        raise ValueError("not a chain map")
    degs = sorted(set(f.source.degrees()) | set(f.target.degrees()))
    direct = all(_induced_iso(f, n) for n in degs)
    if cross_check:
        cone = is_acyclic(mapping_cone(f))
        if cone != direct:
            raise AssertionError("homology comparison and cone acyclicity disagree")
    return direct


def pointwise_acyclic(X: FunctorComplex) -> bool:
    return all(is_acyclic(X.at(c)) for c in X.category.objects)


def detect_acyclic(C: VCategory, X: FunctorComplex, Qs: Sequence[ChainComplex],
                   degrees: Iterable[int]) -> bool:
    """True iff every generator ``hom(c, -) (/) Q`` sees no homology of ``X`` in ``degrees``."""
    Qs = list(Qs)
    if not Qs:
        raise ValueError("empty generator family")
    eps = ChainComplex.unit(C.ring)
    if not any(Q == eps for Q in Qs):
        raise ValueError("generator family must contain the unit complex")
    degrees = list(degrees)
    for c in C.objects:
        for Q in Qs:
            H = functor_hom_complex(generator_object(C, c, Q), X)
            if any(not homology(H, n).is_zero() for n in degrees):
                return False
    return True


def functor_complex_sum(Xs: Sequence[FunctorComplex]) -> FunctorComplex:
    if not Xs:
        raise ValueError("empty direct sum")
    C = Xs[0].category
    lo, hi = min(X.lo for X in Xs), max(X.hi for X in Xs)
    levels = [pointwise_sum([X.level(n) for X in Xs]).total for n in range(lo, hi + 1)]
    diffs = {n: pointwise_sum_maps([X.diff(n) for X in Xs]) for n in range(lo + 1, hi + 1)}
    # re-seat the differentials on the freshly built level functors
    diffs = {n: {c: v.component(c) for c in C.objects} for n, v in diffs.items()}
    return FunctorComplex(C, lo, levels, diffs, check=False)


def compactness_check(C: VCategory, c: str, Q: ChainComplex, Xs: Sequence[FunctorComplex],
                      n: int) -> Report:
    """Hom out of the generator into a finite direct sum is the sum of the Homs."""
    rep = Report("compactness of the generator on finite direct sums", notes=[SCALE_NOTE])
    if not Xs:
        raise ValueError("empty family")
    total = derived_hom_functor_cat(C, c, Q, functor_complex_sum(Xs), n)
    parts = PresentedModule.zero(C.ring)
    for X in Xs:
        parts = parts.direct_sum(derived_hom_functor_cat(C, c, Q, X, n))
    rep.checked = 1
    if total != parts:
        rep.add(Failure("Hom commutes with the direct sum", (c, n), detail=f"{total} != {parts}"))
    return rep


__all__ = [
    "derived_hom_V", "evaluate_complex", "generator_object", "FunctorHomComplex",
    "functor_hom_complex", "derived_hom_functor_cat", "natural_iso_check", "is_quasi_iso",
    "pointwise_acyclic", "detect_acyclic", "functor_complex_sum", "compactness_check",
    "SCALE_NOTE",
]
