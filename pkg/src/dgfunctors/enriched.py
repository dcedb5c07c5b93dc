"""Small categories enriched in free modules, their functors and natural transformations.

A :class:`VCategory` stores a total table of hom ranks, a composition matrix
``comp[a, b, c]: hom(a, b) (x) hom(b, c) -> hom(a, c)`` (first map first) and
a unit column ``unit[a]: e -> hom(a, a)``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from . import base
from .chains import (ChainComplex, ChainMap, assoc_chain, compose_hom, compose_hom_component,
                     identity_map, left_unit_chain_inv, right_unit_chain_inv, tensor_chainmap,
                     tensor_complex, unit_chain)
from .errors import AxiomError
from .linalg import (Matrix, PresentedModule, RingSpec, ShapeError, kronecker)
from .report import Failure, Report


class VCategory:
    def __init__(self, ring: RingSpec, objects: Sequence[str], homs: Mapping[tuple, int],
                 comp: Mapping[tuple, Matrix] | None = None,
                 unit: Mapping[str, Matrix] | None = None):
        self.ring = ring
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object identifiers")
        self._homs = {}
        for a in self.objects:
            for b in self.objects:
                if (a, b) not in homs:
                    raise ShapeError(f"hom table is missing ({a}, {b})")
                self._homs[(a, b)] = int(homs[(a, b)])
        comp = dict(comp or {})
        unit = dict(unit or {})
        extra = set(comp) - {(a, b, c) for a in self.objects for b in self.objects
                             for c in self.objects}
        if extra or set(unit) - set(self.objects):
            raise ShapeError("composition or unit given for unknown objects")
        self._comp = {}
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    shape = (self.rank(a, c), self.rank(a, b) * self.rank(b, c))
                    m = comp.get((a, b, c))
                    if m is None:
                        m = Matrix.zeros(ring, *shape)
                    if m.shape != shape or m.ring != ring:
                        raise ShapeError(f"comp({a},{b},{c}) has shape {m.shape}, expected {shape}")
                    self._comp[(a, b, c)] = m
        self._unit = {}
        for a in self.objects:
            m = unit.get(a)
            if m is None:
                m = Matrix.zeros(ring, self.rank(a, a), 1)
            if m.shape != (self.rank(a, a), 1) or m.ring != ring:
                raise ShapeError(f"unit({a}) has shape {m.shape}")
            self._unit[a] = m

    def rank(self, a: str, b: str) -> int:
        return self._homs[(a, b)]

    def hom(self, a: str, b: str) -> base.VObject:
        return base.VObject(self.ring, self._homs[(a, b)], f"{a}->{b}")

    def comp(self, a: str, b: str, c: str) -> Matrix:
        return self._comp[(a, b, c)]

    def unit(self, a: str) -> Matrix:
        return self._unit[a]

    def require(self, c: str):
        if c not in self.objects:
            raise KeyError(f"unknown object {c!r}")

    def replace(self, comp=None, unit=None) -> "VCategory":
        """Copy with some composition/unit entries overridden."""
        return VCategory(self.ring, self.objects, self._homs, {**self._comp, **(comp or {})},
                         {**self._unit, **(unit or {})})

    def __eq__(self, other):
        if not isinstance(other, VCategory):
            return NotImplemented
        return (self.ring, self.objects, self._homs, self._comp, self._unit) == (
            other.ring, other.objects, other._homs, other._comp, other._unit)

    def __repr__(self):
        return f"VCategory({self.ring}, objects={list(self.objects)})"


class ChCategory:
    """Category enriched in chain complexes: hom complexes, chain-map composition and units."""

    def __init__(self, ring: RingSpec, objects: Sequence[str], homs: Mapping[tuple, ChainComplex],
                 comp: Mapping[tuple, ChainMap], unit: Mapping[str, ChainMap]):
        self.ring = ring
        self.objects = tuple(objects)
        self._homs = dict(homs)
        self._comp = dict(comp)
        self._unit = dict(unit)

    def hom(self, a, b) -> ChainComplex:
        return self._homs[(a, b)]

    def comp(self, a, b, c) -> ChainMap:
        return self._comp[(a, b, c)]

    def unit(self, a) -> ChainMap:
        return self._unit[a]


# --------------------------------------------------------------------------
# the two enrichment bases, as interchangeable operation bundles


class _VOps:
    name = "V"

    @staticmethod
    def tensor(f, g):
        return kronecker(f, g)

    @staticmethod
    def identity(C, a, b):
        return Matrix.identity(C.ring, C.rank(a, b))

    @staticmethod
    def assoc(C, x, y, z):
        # (x (x) y) (x) z -> x (x) (y (x) z) on hom objects
        return base.structure_isos(x, y, z).assoc.matrix

    @staticmethod
    def homobj(C, a, b):
        return C.hom(a, b)

    @staticmethod
    def lunit_inv(C, a, b):
        return Matrix.identity(C.ring, C.rank(a, b))

    @staticmethod
    def runit_inv(C, a, b):
        return Matrix.identity(C.ring, C.rank(a, b))

    @staticmethod
    def residual(f, g):
        d = f - g
        return None if d.is_zero() else d


class _ChOps:
    name = "Ch(V)"

    @staticmethod
    def tensor(f, g):
        return tensor_chainmap(f, g)

    @staticmethod
    def identity(C, a, b):
        return identity_map(C.hom(a, b))

    @staticmethod
    def homobj(C, a, b):
        return C.hom(a, b)

    @staticmethod
    def assoc(C, x, y, z):
        return assoc_chain(x, y, z)

    @staticmethod
    def lunit_inv(C, a, b):
        return left_unit_chain_inv(C.hom(a, b))

    @staticmethod
    def runit_inv(C, a, b):
        return right_unit_chain_inv(C.hom(a, b))

    @staticmethod
    def residual(f, g):
        for n in sorted(set(f.degrees()) | set(g.degrees())):
            d = f.component(n) - g.component(n)
            if not d.is_zero():
                return d
        return None


def _check_category(C, ops, title: str) -> Report:
    rep = Report(title)
    obs = C.objects
    for a in obs:
        for b in obs:
            for c in obs:
                for d in obs:
                    hab, hbc, hcd = (ops.homobj(C, a, b), ops.homobj(C, b, c), ops.homobj(C, c, d))
                    left = ops.compose(C.comp(a, b, d), ops.compose(
                        ops.tensor(ops.identity(C, a, b), C.comp(b, c, d)),
                        ops.assoc(C, hab, hbc, hcd)))
                    right = ops.compose(C.comp(a, c, d),
                                        ops.tensor(C.comp(a, b, c), ops.identity(C, c, d)))
                    rep.checked += 1
                    res = ops.residual(left, right)
                    if res is not None:
                        rep.add(Failure("associativity", (a, b, c, d), res))
    for a in obs:
        for b in obs:
            left = ops.compose(C.comp(a, a, b), ops.compose(
                ops.tensor(C.unit(a), ops.identity(C, a, b)), ops.lunit_inv(C, a, b)))
            rep.checked += 1
            res = ops.residual(left, ops.identity(C, a, b))
            if res is not None:
                rep.add(Failure("left unit", (a, b), res))
            right = ops.compose(C.comp(a, b, b), ops.compose(
                ops.tensor(ops.identity(C, a, b), C.unit(b)), ops.runit_inv(C, a, b)))
            rep.checked += 1
            res = ops.residual(right, ops.identity(C, a, b))
            if res is not None:
                rep.add(Failure("right unit", (a, b), res))
    return rep


_VOps.compose = staticmethod(lambda g, f: g @ f)
_ChOps.compose = staticmethod(lambda g, f: g @ f)


def check_category_axioms(C: VCategory) -> Report:
    """Associativity and both unit laws, one exact matrix identity per instance."""
    return _check_category(C, _VOps, "enriched category axioms (associativity, unit)")


def check_ch_category_axioms(C: ChCategory) -> Report:
    return _check_category(C, _ChOps, "chain-enriched category axioms (associativity, unit)")


# --------------------------------------------------------------------------


class VFunctor:
    """Enriched functor out of a :class:`VCategory`.

    ``target=None`` means the codomain is V itself; ``obj[a]`` is then a rank
    and ``hom_maps[a, b]: hom(a, b) -> [F(a), F(b)]``.  With a target
    category, ``obj[a]`` is an object identifier of the target.
    """

    def __init__(self, source: VCategory, obj: Mapping[str, int | str],
                 hom_maps: Mapping[tuple, Matrix], target: VCategory | None = None):
        self.source = source
        self.target = target
        self.ring = source.ring
        self._obj = {}
        for a in source.objects:
            if a not in obj:
                raise ShapeError(f"functor has no value at {a!r}")
            self._obj[a] = obj[a] if target is not None else int(obj[a])
            if target is not None:
                target.require(obj[a])
        self._maps = {}
        for a in source.objects:
            for b in source.objects:
                shape = (self._hom_rank(a, b), source.rank(a, b))
                m = hom_maps.get((a, b))
                if m is None:
                    m = Matrix.zeros(self.ring, *shape)
                if m.shape != shape or m.ring != self.ring:
                    raise ShapeError(f"F_({a},{b}) has shape {m.shape}, expected {shape}")
                self._maps[(a, b)] = m

    def _hom_rank(self, a, b):
        if self.target is None:
            return self._obj[a] * self._obj[b]
        return self.target.rank(self._obj[a], self._obj[b])

    def value(self, a: str):
        return self._obj[a]

    def rank(self, a: str) -> int:
        if self.target is not None:
            raise TypeError("rank() is for functors into V")
        return self._obj[a]

    def obj(self, a: str) -> base.VObject:
        return base.VObject(self.ring, self.rank(a))

    def hom_map(self, a: str, b: str) -> Matrix:
        return self._maps[(a, b)]

    def action(self, a: str, b: str, s: int) -> Matrix:
        """The map ``F(a) -> F(b)`` induced by basis element ``s`` of ``hom(a, b)``."""
        return base.unvec(self._maps[(a, b)].column(s), self._obj[a], self._obj[b], self.ring)

    def __eq__(self, other):
        if not isinstance(other, VFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self._obj == other._obj and self._maps == other._maps)

    def __repr__(self):
        return f"VFunctor(values={self._obj})"


def functor_from_actions(C: VCategory, ranks: Mapping[str, int],
                         actions: Mapping[tuple, Sequence[Matrix]]) -> VFunctor:
    """Build a V-valued functor from the matrices ``F(a) -> F(b)`` of each hom basis element."""
    maps = {}
    for a in C.objects:
        for b in C.objects:
            mats = actions.get((a, b), ())
            if len(mats) != C.rank(a, b):
                if mats or C.rank(a, b):
                    raise ShapeError(f"need {C.rank(a, b)} action matrices for ({a},{b})")
            cols = [tuple(x for (x,) in base.vec(m).rows) for m in mats]
            maps[(a, b)] = Matrix.from_columns(C.ring, ranks[a] * ranks[b], cols)
    return VFunctor(C, ranks, maps)


def check_functor_axioms(F: VFunctor) -> Report:
    """Composition and unit diagrams for an enriched functor."""
    C = F.source
    ring = C.ring
    rep = Report("enriched functor axioms (composition, unit)")
    obs = C.objects
    D = F.target
    for a in obs:
        for b in obs:
            for c in obs:
                if D is None:
                    cV = base.compose_matrix(ring, F.rank(a), F.rank(b), F.rank(c))
                else:
                    cV = D.comp(F.value(a), F.value(b), F.value(c))
                left = F.hom_map(a, c) @ C.comp(a, b, c)
                right = cV @ kronecker(F.hom_map(a, b), F.hom_map(b, c))
                rep.checked += 1
                if left != right:
                    rep.add(Failure("functor composition", (a, b, c), left - right))
    for a in obs:
        u = base.unit_matrix(ring, F.rank(a)) if D is None else D.unit(F.value(a))
        left = F.hom_map(a, a) @ C.unit(a)
        rep.checked += 1
        if left != u:
            rep.add(Failure("functor unit", (a,), left - u))
    return rep


def identity_functor(C: VCategory) -> VFunctor:
    return VFunctor(C, {a: a for a in C.objects},
                    {(a, b): Matrix.identity(C.ring, C.rank(a, b))
                     for a in C.objects for b in C.objects}, target=C)


class VNat:
    """Natural transformation between V-valued functors, stored by components ``F(a) -> G(a)``."""

    def __init__(self, source: VFunctor, target: VFunctor, components: Mapping[str, Matrix]):
        if source.source is not target.source and source.source != target.source:
            raise ShapeError("natural transformation between functors on different categories")
        self.source = source
        self.target = target
        self._comps = {}
        for a in source.source.objects:
            shape = (target.rank(a), source.rank(a))
            m = components.get(a)
            if m is None:
                m = Matrix.zeros(source.ring, *shape)
            if m.shape != shape:
                raise ShapeError(f"component at {a} has shape {m.shape}, expected {shape}")
            self._comps[a] = m

    @property
    def category(self) -> VCategory:
        return self.source.source

    @property
    def ring(self) -> RingSpec:
        return self.source.ring

    def component(self, a: str) -> Matrix:
        return self._comps[a]

    def __matmul__(self, other: "VNat") -> "VNat":
        if other.target != self.source:
            raise ShapeError("natural transformations do not compose")
        return VNat(other.source, self.target,
                    {a: self._comps[a] @ other._comps[a] for a in self._comps})

    def __add__(self, other: "VNat") -> "VNat":
        return VNat(self.source, self.target,
                    {a: self._comps[a] + other._comps[a] for a in self._comps})

    def scale(self, c) -> "VNat":
        return VNat(self.source, self.target, {a: m.scale(c) for a, m in self._comps.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._comps.values())

    def __eq__(self, other):
        if not isinstance(other, VNat):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self._comps == other._comps)

    def __repr__(self):
        return f"VNat({self.source!r} => {self.target!r})"


def identity_nat(F: VFunctor) -> VNat:
    return VNat(F, F, {a: Matrix.identity(F.ring, F.rank(a)) for a in F.source.objects})


def zero_nat(F: VFunctor, G: VFunctor) -> VNat:
    return VNat(F, G, {})


def naturality_residual(alpha: VNat, a: str, b: str) -> Matrix:
    """``[id, alpha_b] o F_ab - [alpha_a, id] o G_ab`` as a map ``hom(a, b) -> [F a, G b]``."""
    F, G = alpha.source, alpha.target
    ring = F.ring
    left = base.hom_matrix(Matrix.identity(ring, F.rank(a)), alpha.component(b)) @ F.hom_map(a, b)
    right = base.hom_matrix(alpha.component(a), Matrix.identity(ring, G.rank(b))) @ G.hom_map(a, b)
    return left - right


def check_vnat(alpha: VNat) -> Report:
    rep = Report("enriched naturality square")
    obs = alpha.category.objects
    for a in obs:
        for b in obs:
            rep.checked += 1
            r = naturality_residual(alpha, a, b)
            if not r.is_zero():
                rep.add(Failure("naturality", (a, b), r))
    return rep


# --------------------------------------------------------------------------
# constructions


def unit_category(ring: RingSpec, name: str = "*") -> VCategory:
    one = Matrix.identity(ring, 1)
    return VCategory(ring, [name], {(name, name): 1}, {(name, name, name): one}, {name: one})


def monoidal_product_cat(C: VCategory, D: VCategory) -> VCategory:
    """Objects are pairs; composition interchanges the middle factors with the symmetry."""
    if C.ring != D.ring:
        raise ShapeError("monoidal product of categories over different rings")
    ring = C.ring
    pair = lambda a, x: f"({a},{x})"
    pairs = [(a, x) for a in C.objects for x in D.objects]
    homs = {(pair(a, x), pair(b, y)): C.rank(a, b) * D.rank(x, y)
            for a, x in pairs for b, y in pairs}
    comp = {}
    for a, x in pairs:
        for b, y in pairs:
            for c, z in pairs:
                r1, r2, r3, r4 = C.rank(a, b), D.rank(x, y), C.rank(b, c), D.rank(y, z)
                middle = kronecker(kronecker(Matrix.identity(ring, r1), base.swap_matrix(ring, r2, r3)),
                                   Matrix.identity(ring, r4))
                comp[(pair(a, x), pair(b, y), pair(c, z))] = kronecker(
                    C.comp(a, b, c), D.comp(x, y, z)) @ middle
    unit = {pair(a, x): kronecker(C.unit(a), D.unit(x)) for a, x in pairs}
    return VCategory(ring, [pair(a, x) for a, x in pairs], homs, comp, unit)


def underlying_hom(C: VCategory, a: str, b: str) -> PresentedModule:
    """Morphisms ``e -> hom(a, b)``, identified with ``hom(a, b)`` itself."""
    return PresentedModule(C.ring, C.rank(a, b))


def underlying_compose(C: VCategory, a: str, b: str, c: str, f: Matrix, g: Matrix) -> Matrix:
    """Composite ``g o f`` of underlying morphisms ``f: e -> hom(a, b)``, ``g: e -> hom(b, c)``."""
    return C.comp(a, b, c) @ kronecker(f, g)


def trivial_dg_enrichment(C: VCategory) -> ChCategory:
    """Regard C as enriched in complexes concentrated in degree zero."""
    rep = check_category_axioms(C)
    if not rep.ok:
        raise AxiomError(f"category fails its axioms: {rep.failures[0]}")
    ring = C.ring
    homs = {(a, b): ChainComplex(ring, 0, [C.rank(a, b)]) for a in C.objects for b in C.objects}
    comp = {}
    for a in C.objects:
        for b in C.objects:
            for c in C.objects:
                S = tensor_complex(homs[(a, b)], homs[(b, c)])
                comp[(a, b, c)] = ChainMap(S, homs[(a, c)], {0: C.comp(a, b, c)}, check=False)
    eps = ChainComplex.unit(ring)
    unit = {a: ChainMap(eps, homs[(a, a)], {0: C.unit(a)}, check=False) for a in C.objects}
    return ChCategory(ring, C.objects, homs, comp, unit)


def representable(C: VCategory, c: str) -> VFunctor:
    """``hom(c, -)``; the structure map is the transpose of ``comp(c, a, b)`` precomposed with the swap."""
    C.require(c)
    ring = C.ring
    ranks = {b: C.rank(c, b) for b in C.objects}
    maps = {}
    for a in C.objects:
        for b in C.objects:
            ca, ab, cb = C.rank(c, a), C.rank(a, b), C.rank(c, b)
            k = C.comp(c, a, b) @ base.swap_matrix(ring, ab, ca)
            maps[(a, b)] = base.adjoint_matrix(k, ab, ca, cb)
    return VFunctor(C, ranks, maps)


def precompose_nat(C: VCategory, a: str, b: str, f: Matrix) -> VNat:
    """``hom(b, -) => hom(a, -)`` given by precomposition with ``f: e -> hom(a, b)``."""
    ring = C.ring
    Rb, Ra = representable(C, b), representable(C, a)
    comps = {}
    for d in C.objects:
        # g in hom(b, d) |-> comp(a, b, d)(f (x) g)
        comps[d] = C.comp(a, b, d) @ kronecker(f, Matrix.identity(ring, C.rank(b, d)))
    return VNat(Rb, Ra, comps)


# --------------------------------------------------------------------------
# checks for functors into Ch(V) out of a trivially enriched category


def check_dg_functor_axioms(C: VCategory, values: Mapping[str, ChainComplex],
                            structure: Mapping[tuple, ChainMap]) -> Report:
    """Composition/unit diagrams for a Ch(V)-functor out of ``trivial_dg_enrichment(C)``.

    Only degree zero can be nonzero on the source side, so the composition
    diagram is compared there.
    """
    T = trivial_dg_enrichment(C)
    rep = Report("chain-enriched functor axioms (composition, unit)")
    for a in C.objects:
        for b in C.objects:
            for c in C.objects:
                A, B, Cc = values[a], values[b], values[c]
                left = structure[(a, c)].component(0) @ T.comp(a, b, c).component(0)
                tens = tensor_chainmap(structure[(a, b)], structure[(b, c)])
                right = compose_hom_component(A, B, Cc, 0) @ tens.component(0)
                rep.checked += 1
                if left != right:
                    rep.add(Failure("dg functor composition", (a, b, c), left - right))
    for a in C.objects:
        left = structure[(a, a)].component(0) @ T.unit(a).component(0)
        u = unit_chain(values[a]).component(0)
        rep.checked += 1
        if left != u:
            rep.add(Failure("dg functor unit", (a,), left - u))
    return rep


__all__ = [
    "VCategory", "ChCategory", "VFunctor", "VNat", "check_category_axioms",
    "check_ch_category_axioms", "check_functor_axioms", "check_vnat", "check_dg_functor_axioms",
    "monoidal_product_cat", "underlying_hom", "underlying_compose", "trivial_dg_enrichment",
    "representable", "unit_category", "identity_functor", "identity_nat", "zero_nat",
    "functor_from_actions", "precompose_nat", "naturality_residual", "compose_hom",
]
