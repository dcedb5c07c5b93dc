"""Complexes of functors versus functors into complexes.

A :class:`FunctorComplex` is a chain complex in [C, V]; a :class:`DGFunctor`
sends each object to a chain complex and each hom to a degree-zero family of
maps ``hom(a, b) -> [F(a)_p, F(b)_p]``.  The two translations below are index
relabelings and are strictly inverse to each other.
"""

from __future__ import annotations

from typing import Mapping

from . import base
from .chains import ChainComplex, ChainMap, hom_complex, hom_factors, identity_map
from .enriched import (VCategory, VFunctor, VNat, check_dg_functor_axioms, check_functor_axioms,
                       check_vnat, naturality_residual)
from .errors import AxiomError, InvariantError
from .functors import zero_functor
from .linalg import Matrix, ShapeError, vstack
from .report import Failure, Report


class FunctorComplex:
    """Levels ``G_n`` for ``lo <= n <= hi`` with natural differentials ``G_n -> G_{n-1}``.

    ``diffs[n][c]`` is the component at ``c`` of the differential leaving
    degree ``n``; missing entries are zero.
    """

    def __init__(self, category: VCategory, lo: int, levels, diffs: Mapping | None = None,
                 check: bool = True):
        self.category = category
        self.ring = category.ring
        self.lo = lo
        self._levels = list(levels)
        for G in self._levels:
            if G.source is not category and G.source != category:
                raise ShapeError("level lives on a different category")
            if G.target is not None:
                raise ShapeError("levels must be functors into V")
        self.hi = lo + len(self._levels) - 1
        self._zero = zero_functor(category)
        diffs = dict(diffs or {})
        self._diffs = {}
        for n in range(lo + 1, self.hi + 1):
            given = diffs.pop(n, {})
            comps = given.component if isinstance(given, VNat) else given.get
            self._diffs[n] = VNat(self.level(n), self.level(n - 1),
                                  {c: comps(c) for c in category.objects})
        if any(not _is_zero_family(v) for v in diffs.values()):
            raise ShapeError(f"differentials outside the window {lo}..{self.hi}")
        if check:
            rep = self.check()
            if not rep.ok:
                f = rep.failures[0]
                raise InvariantError(f.diagram, f"at {f.where}")

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def level(self, n: int) -> VFunctor:
        if self.lo <= n <= self.hi:
            return self._levels[n - self.lo]
        return self._zero

    def diff(self, n: int) -> VNat:
        if n in self._diffs:
            return self._diffs[n]
        return VNat(self.level(n), self.level(n - 1), {})

    def at(self, c: str) -> ChainComplex:
        """The complex ``G_*(c)`` obtained by evaluating at ``c``."""
        self.category.require(c)
        ranks = [G.rank(c) for G in self._levels]
        diffs = {n: self._diffs[n].component(c) for n in self._diffs}
        return ChainComplex(self.ring, self.lo, ranks, diffs)

    def check(self, axioms: bool = True) -> Report:
        """d^2 = 0 and naturality of d; the functor axioms of each level when ``axioms``."""
        rep = Report("complex of functors (functor levels, natural differentials, d^2 = 0)")
        for n in (self.degrees() if axioms else ()):
            sub = check_functor_axioms(self.level(n))
            rep.checked += sub.checked
            for f in sub.failures:
                rep.add(Failure(f"level {n}: {f.diagram}", f.where, f.residual))
        for n, d in self._diffs.items():
            sub = check_vnat(d)
            rep.checked += sub.checked
            for f in sub.failures:
                rep.add(Failure(f"differential {n}: naturality", f.where, f.residual))
        for n in range(self.lo + 2, self.hi + 1):
            for c in self.category.objects:
                rep.checked += 1
                dd = self._diffs[n - 1].component(c) @ self._diffs[n].component(c)
                if not dd.is_zero():
                    rep.add(Failure("d^2 = 0", (n, c), dd))
        return rep

    def __eq__(self, other):
        if not isinstance(other, FunctorComplex):
            return NotImplemented
        if self.category != other.category:
            return False
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        for n in range(lo, hi + 2):
            if self.level(n) != other.level(n) and not (
                    _is_zero_functor(self.level(n)) and _is_zero_functor(other.level(n))):
                return False
            for c in self.category.objects:
                if self.diff(n).component(c) != other.diff(n).component(c):
                    return False
        return True

    def __repr__(self):
        return f"FunctorComplex(lo={self.lo}, hi={self.hi})"


def _is_zero_functor(F: VFunctor) -> bool:
    return all(F.rank(c) == 0 for c in F.source.objects)


def _is_zero_family(v) -> bool:
    comps = v._comps.values() if isinstance(v, VNat) else v.values()
    return all(m.is_zero() for m in comps)


class FunctorChainMap:
    """Morphism of complexes of functors: natural maps ``g_n: G_n -> G'_n`` commuting with d."""

    def __init__(self, source: FunctorComplex, target: FunctorComplex, components: Mapping,
                 check: bool = True):
        self.source, self.target = source, target
        self.ring = source.ring
        C = source.category
        self._comps = {}
        for n in range(min(source.lo, target.lo), max(source.hi, target.hi) + 1):
            given = components.get(n, {})
            get = given.component if isinstance(given, VNat) else given.get
            self._comps[n] = VNat(source.level(n), target.level(n),
                                  {c: get(c) for c in C.objects})
        if check:
            rep = self.check()
            if not rep.ok:
                raise InvariantError(rep.failures[0].diagram, f"at {rep.failures[0].where}")

    def component(self, n: int) -> VNat:
        if n in self._comps:
            return self._comps[n]
        return VNat(self.source.level(n), self.target.level(n), {})

    def degrees(self):
        return sorted(self._comps)

    def at(self, c: str) -> ChainMap:
        return ChainMap(self.source.at(c), self.target.at(c),
                        {n: v.component(c) for n, v in self._comps.items()})

    def check(self) -> Report:
        rep = Report("morphism of complexes of functors")
        for n, g in self._comps.items():
            sub = check_vnat(g)
            rep.checked += sub.checked
            for f in sub.failures:
                rep.add(Failure(f"component {n}: naturality", f.where, f.residual))
            for c in self.source.category.objects:
                rep.checked += 1
                left = self.target.diff(n).component(c) @ g.component(c)
                right = self.component(n - 1).component(c) @ self.source.diff(n).component(c)
                if left != right:
                    rep.add(Failure("commutes with d", (n, c), left - right))
        return rep

    def __matmul__(self, other: "FunctorChainMap") -> "FunctorChainMap":
        degs = set(self._comps) | set(other._comps)
        return FunctorChainMap(other.source, self.target,
                               {n: self.component(n) @ other.component(n) for n in degs},
                               check=False)

    def __eq__(self, other):
        if not isinstance(other, FunctorChainMap):
            return NotImplemented
        degs = set(self._comps) | set(other._comps)
        C = self.source.category
        return self.source == other.source and self.target == other.target and all(
            self.component(n).component(c) == other.component(n).component(c)
            for n in degs for c in C.objects)


def identity_functor_chainmap(G: FunctorComplex) -> FunctorChainMap:
    C = G.category
    return FunctorChainMap(G, G, {n: {c: Matrix.identity(G.ring, G.level(n).rank(c))
                                      for c in C.objects} for n in G.degrees()}, check=False)


# --------------------------------------------------------------------------


class DGFunctor:
    """A functor from the trivially chain-enriched ``C`` into complexes.

    ``structure[(a, b)][p]`` is the matrix ``hom(a, b) -> [F(a)_p, F(b)_p]``;
    missing degrees are zero.
    """

    def __init__(self, category: VCategory, complexes: Mapping[str, ChainComplex],
                 structure: Mapping[tuple, Mapping[int, Matrix]]):
        self.category = category
        self.ring = category.ring
        self._cx = {}
        for c in category.objects:
            if c not in complexes:
                raise ShapeError(f"no complex at {c!r}")
            self._cx[c] = complexes[c]
        self.lo = min(X.lo for X in self._cx.values())
        self.hi = max(X.hi for X in self._cx.values())
        self._st = {}
        for a in category.objects:
            for b in category.objects:
                given = dict(structure.get((a, b), {}))
                per = {}
                for p in range(self.lo, self.hi + 1):
                    shape = (self._cx[a].rank(p) * self._cx[b].rank(p), category.rank(a, b))
                    m = given.pop(p, None)
                    if m is None:
                        m = Matrix.zeros(self.ring, *shape)
                    if m.shape != shape:
                        raise ShapeError(f"F_({a},{b}) in degree {p} has shape {m.shape}, "
                                         f"expected {shape}")
                    per[p] = m
                if any(not m.is_zero() for m in given.values()):
                    raise ShapeError(f"F_({a},{b}) nonzero outside the window")
                self._st[(a, b)] = per

    def complex(self, c: str) -> ChainComplex:
        return self._cx[c]

    def structure(self, a: str, b: str, p: int) -> Matrix:
        per = self._st[(a, b)]
        if p in per:
            return per[p]
        return Matrix.zeros(self.ring, self._cx[a].rank(p) * self._cx[b].rank(p),
                            self.category.rank(a, b))

    def structure_chainmap(self, a: str, b: str) -> ChainMap:
        """``F_ab`` as a map from the degree-zero complex ``hom(a, b)`` into ``Hom(F a, F b)``."""
        X, Y = self._cx[a], self._cx[b]
        H = hom_complex(X, Y)
        src = ChainComplex(self.ring, 0, [self.category.rank(a, b)])
        blocks = [self.structure(a, b, p) for p in hom_factors(X, Y, 0)]
        return ChainMap(src, H, {0: vstack(self.ring, src.rank(0), blocks)}, check=False)

    def __eq__(self, other):
        if not isinstance(other, DGFunctor):
            return NotImplemented
        if self.category != other.category or self._cx != other._cx:
            return False
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return all(self.structure(a, b, p) == other.structure(a, b, p)
                   for (a, b) in self._st for p in range(lo, hi + 1))

    def __repr__(self):
        return f"DGFunctor(window={self.lo}..{self.hi})"


def check_structure_condition(F: DGFunctor) -> Report:
    """``[id, d^{F b}_p] o (F_ab)_p - [d^{F a}_p, id] o (F_ab)_{p-1} = 0`` for all ``a, b, p``."""
    C = F.category
    ring = F.ring
    rep = Report("structure maps commute with the differentials")
    for a in C.objects:
        for b in C.objects:
            X, Y = F.complex(a), F.complex(b)
            for p in range(F.lo, F.hi + 2):
                # both terms land in [X_p, Y_{p-1}]
                left = base.hom_matrix(Matrix.identity(ring, X.rank(p)), Y.diff(p)) @ \
                    F.structure(a, b, p)
                right = base.hom_matrix(X.diff(p), Matrix.identity(ring, Y.rank(p - 1))) @ \
                    F.structure(a, b, p - 1)
                rep.checked += 1
                if left != right:
                    rep.add(Failure("structure condition", (a, b, p), left - right))
    return rep


def check_dg_functor(F: DGFunctor) -> Report:
    """Structure condition plus the chain-enriched composition and unit axioms."""
    rep = check_structure_condition(F)
    C = F.category
    structure = {(a, b): F.structure_chainmap(a, b) for a in C.objects for b in C.objects}
    rep.extend(check_dg_functor_axioms(C, {c: F.complex(c) for c in C.objects}, structure))
    return rep


class DGNat:
    """Chain maps ``f(c): F(c) -> F'(c)`` natural in ``c``."""

    def __init__(self, source: DGFunctor, target: DGFunctor, components: Mapping[str, ChainMap],
                 check: bool = True):
        self.source, self.target = source, target
        self._comps = dict(components)
        if check:
            rep = self.check()
            if not rep.ok:
                raise InvariantError(rep.failures[0].diagram, f"at {rep.failures[0].where}")

    def component(self, c: str) -> ChainMap:
        return self._comps[c]

    def check(self) -> Report:
        rep = Report("natural transformation of functors into complexes")
        F, G = self.source, self.target
        C = F.category
        ring = F.ring
        for c in C.objects:
            rep.checked += 1
            n = self._comps[c].chain_defect()
            if n is not None:
                rep.add(Failure("component is a chain map", (c, n)))
        lo, hi = min(F.lo, G.lo), max(F.hi, G.hi)
        for a in C.objects:
            for b in C.objects:
                for p in range(lo, hi + 1):
                    fa, fb = self._comps[a].component(p), self._comps[b].component(p)
                    left = base.hom_matrix(Matrix.identity(ring, F.complex(a).rank(p)), fb) @ \
                        F.structure(a, b, p)
                    right = base.hom_matrix(fa, Matrix.identity(ring, G.complex(b).rank(p))) @ \
                        G.structure(a, b, p)
                    rep.checked += 1
                    if left != right:
                        rep.add(Failure("naturality", (a, b, p), left - right))
        return rep

    def __matmul__(self, other: "DGNat") -> "DGNat":
        return DGNat(other.source, self.target,
                     {c: self._comps[c] @ other._comps[c] for c in self._comps}, check=False)

    def __eq__(self, other):
        if not isinstance(other, DGNat):
            return NotImplemented
        return self.source == other.source and self.target == other.target and \
            self._comps == other._comps


# --------------------------------------------------------------------------
# the translations


def to_functor_complex(F: DGFunctor, verify: bool = True) -> FunctorComplex:
    """``G_n(c) = F(c)_n``, ``(G_n)_ab = (F_ab)_n``, ``d^G_n(c) = d^{F c}_n``; window is the union."""
    C = F.category
    if verify:
        rep = check_dg_functor(F)
        if not rep.ok:
            raise AxiomError(f"not a functor into complexes: {rep.failures[0]}")
    levels = []
    for n in range(F.lo, F.hi + 1):
        levels.append(VFunctor(C, {c: F.complex(c).rank(n) for c in C.objects},
                               {(a, b): F.structure(a, b, n) for a in C.objects
                                for b in C.objects}))
    diffs = {n: {c: F.complex(c).diff(n) for c in C.objects} for n in range(F.lo + 1, F.hi + 1)}
    return FunctorComplex(C, F.lo, levels, diffs, check=verify)


def to_dg_functor(G: FunctorComplex, verify: bool = True) -> DGFunctor:
    """``F(c)_n = G_n(c)``, ``d^{F c}_n = d^G_n(c)``, ``(F_ab)_p = (G_p)_ab``."""
    C = G.category
    if verify:
        rep = G.check()
        if not rep.ok:
            raise InvariantError(rep.failures[0].diagram, f"at {rep.failures[0].where}")
    complexes = {c: G.at(c) for c in C.objects}
    structure = {(a, b): {n: G.level(n).hom_map(a, b) for n in G.degrees()}
                 for a in C.objects for b in C.objects}
    return DGFunctor(C, complexes, structure)


def nat_to_functor_chainmap(f: DGNat, source: FunctorComplex | None = None,
                            target: FunctorComplex | None = None) -> FunctorChainMap:
    """``g_p(a) = f(a)_p``."""
    src = source or to_functor_complex(f.source, verify=False)
    tgt = target or to_functor_complex(f.target, verify=False)
    C = src.category
    degs = range(min(src.lo, tgt.lo), max(src.hi, tgt.hi) + 1)
    return FunctorChainMap(src, tgt, {p: {c: f.component(c).component(p) for c in C.objects}
                                      for p in degs}, check=False)


def functor_chainmap_to_nat(g: FunctorChainMap, source: DGFunctor | None = None,
                            target: DGFunctor | None = None) -> DGNat:
    """``f(a)_p = g_p(a)``; inverse of :func:`nat_to_functor_chainmap`."""
    src = source or to_dg_functor(g.source, verify=False)
    tgt = target or to_dg_functor(g.target, verify=False)
    C = g.source.category
    comps = {c: ChainMap(src.complex(c), tgt.complex(c),
                         {p: g.component(p).component(c) for p in g.degrees()}, check=False)
             for c in C.objects}
    return DGNat(src, tgt, comps, check=False)


def identity_dg_nat(F: DGFunctor) -> DGNat:
    return DGNat(F, F, {c: identity_map(F.complex(c)) for c in F.category.objects}, check=False)


def constant_dg_functor(C: VCategory, X: ChainComplex) -> DGFunctor:
    """Every object goes to ``X`` and every basis arrow acts by the scalar of its unit component.

    Only meaningful on the unit category and similar one-object cases.
    """
    structure = {}
    for a in C.objects:
        for b in C.objects:
            per = {}
            for p in X.degrees():
                cols = []
                for s in range(C.rank(a, b)):
                    scalar = C.unit(a).rows[s][0] if a == b else C.ring.zero
                    cols.append(base.vec(Matrix.identity(C.ring, X.rank(p)).scale(scalar)).column(0))
                per[p] = Matrix.from_columns(C.ring, X.rank(p) ** 2, cols) if cols else \
                    Matrix.zeros(C.ring, X.rank(p) ** 2, 0)
            structure[(a, b)] = per
    return DGFunctor(C, {c: X for c in C.objects}, structure)


__all__ = [
    "FunctorComplex", "FunctorChainMap", "DGFunctor", "DGNat", "check_structure_condition",
    "check_dg_functor", "to_functor_complex", "to_dg_functor", "nat_to_functor_chainmap",
    "functor_chainmap_to_nat", "identity_functor_chainmap", "identity_dg_nat",
    "constant_dg_functor", "naturality_residual",
]
