"""Seeded random instances: complexes, chain maps, small categories, functors.

Everything is driven by an explicit ``random.Random`` so runs are
reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .chains import ChainComplex, ChainMap, chain_map_basis
from .derived import FunctorHomComplex
from .enriched import VCategory, VFunctor, VNat, precompose_nat, representable
from .functors import (end_presentation, pointwise_cokernel, pointwise_kernel, pointwise_sum,
                       zero_functor)
from .linalg import Matrix, RingSpec, kernel_basis
from .translation import FunctorChainMap, FunctorComplex


def scalar(rng: random.Random, ring: RingSpec):
    if ring.kind == "F":
        return rng.randrange(ring.p)
    if ring.kind == "Z":
        return rng.randint(-2, 2)
    return Fraction(rng.randint(-3, 3), rng.choice([1, 1, 1, 2, 3]))


def random_matrix(rng: random.Random, ring: RingSpec, nrows: int, ncols: int) -> Matrix:
    return Matrix(ring, [[scalar(rng, ring) for _ in range(ncols)] for _ in range(nrows)],
                  nrows, ncols)


def random_complex(rng: random.Random, ring: RingSpec, max_window: int = 4, max_rank: int = 3,
                   lo_range: tuple = (-2, 2)) -> ChainComplex:
    """Random bounded complex; each differential lands in the kernel of the next one down."""
    lo = rng.randint(*lo_range)
    length = rng.randint(1, max_window)
    ranks = [rng.randint(0, max_rank) for _ in range(length)]
    diffs = {}
    prev = Matrix.zeros(ring, 0, ranks[0])
    for k in range(1, length):
        K = kernel_basis(prev)
        d = K @ random_matrix(rng, ring, K.ncols, ranks[k])
        diffs[lo + k] = d
        prev = d
    return ChainComplex(ring, lo, ranks, diffs)


def random_chain_map(rng: random.Random, X: ChainComplex, Y: ChainComplex) -> ChainMap:
    """Random integer combination of a basis of chain maps."""
    ring = X.ring
    total = None
    for f in chain_map_basis(X, Y):
        c = scalar(rng, ring)
        term = ChainMap(X, Y, {n: f.component(n).scale(c) for n in f.degrees()}, check=False)
        total = term if total is None else total + term
    if total is None:
        return ChainMap(X, Y, {}, check=False)
    return total


# --------------------------------------------------------------------------
# categories


def random_category(rng: random.Random, ring: RingSpec, n_objects: int = 3, max_rank: int = 1,
                    radical_square_zero: bool | None = None) -> VCategory:
    """Random small category with identities at basis index 0 of each endo-hom.

    Two families, both valid by construction: an ordered one where arrows
    go up and the only composite of two non-identity arrows (``0 -> 1 -> 2``)
    is a random matrix; and one with arbitrary non-identity arrows whose
    products all vanish.
    """
    if radical_square_zero is None:
        radical_square_zero = rng.random() < 0.4
    obs = [chr(ord("a") + i) for i in range(n_objects)]
    homs = {}
    for i, a in enumerate(obs):
        for j, b in enumerate(obs):
            if radical_square_zero:
                k = rng.randint(0, max_rank) if i != j else rng.randint(0, min(1, max_rank))
            else:
                k = rng.randint(0, max_rank) if i < j else 0
            homs[(a, b)] = k + (1 if a == b else 0)
    comp = {}
    for a in obs:
        for b in obs:
            for c in obs:
                rab, rbc, rac = homs[(a, b)], homs[(b, c)], homs[(a, c)]
                rows = [[ring.zero] * (rab * rbc) for _ in range(rac)]
                for s in range(rab):
                    for t in range(rbc):
                        col = s * rbc + t
                        if a == b and s == 0:
                            rows[t][col] = ring.one
                        elif b == c and t == 0:
                            rows[s][col] = ring.one
                if (not radical_square_zero and n_objects == 3
                        and (a, b, c) == (obs[0], obs[1], obs[2])):
                    rows = random_matrix(rng, ring, rac, rab * rbc).tolist()
                comp[(a, b, c)] = Matrix(ring, rows, rac, rab * rbc)
    unit = {a: Matrix(ring, [[ring.one]] + [[ring.zero]] * (homs[(a, a)] - 1)) for a in obs}
    return VCategory(ring, obs, homs, comp, unit)


# --------------------------------------------------------------------------
# functors and natural transformations


def random_nat(rng: random.Random, X: VFunctor, Y: VFunctor) -> VNat:
    """Random combination of a basis of natural transformations ``X -> Y``."""
    end = end_presentation(X, Y)
    v = [scalar(rng, X.ring) for _ in range(end.rank)]
    return end.element_to_nat(v)


def _rep_sum(C: VCategory, objs) -> VFunctor:
    if not objs:
        return zero_functor(C)
    return pointwise_sum([representable(C, c) for c in objs]).total


def _fits(F: VFunctor, max_rank: int | None) -> bool:
    return max_rank is None or all(F.rank(c) <= max_rank for c in F.source.objects)


def random_functor(rng: random.Random, C: VCategory, max_rank: int | None = 2,
                   attempts: int = 20) -> VFunctor:
    """A functor obtained from representables by sums, cokernels and kernels."""
    for _ in range(attempts):
        kind = rng.choice(["rep", "sum", "coker", "coker", "ker"])
        objs = [rng.choice(C.objects) for _ in range(rng.randint(1, 2))]
        P = _rep_sum(C, objs)
        if kind == "rep":
            F = representable(C, objs[0])
        elif kind == "sum":
            F = P
        else:
            src_objs = [rng.choice(C.objects) for _ in range(rng.randint(1, 2))]
            S = _rep_sum(C, src_objs)
            alpha = random_nat(rng, S, P)
            try:
                F = (pointwise_cokernel(alpha).cokernel if kind == "coker"
                     else pointwise_kernel(alpha).kernel)
            except ValueError:
                continue
        if _fits(F, max_rank):
            return F
    return zero_functor(C)


def random_functor_complex(rng: random.Random, C: VCategory, max_window: int = 2,
                           max_rank: int = 2, lo_range: tuple = (-1, 1)) -> FunctorComplex:
    """Each differential factors through the kernel of the one below it."""
    lo = rng.randint(*lo_range)
    length = rng.randint(1, max_window)
    levels = [random_functor(rng, C, max_rank) for _ in range(length)]
    diffs = {}
    prev = None
    for k in range(1, length):
        G, H = levels[k], levels[k - 1]
        if prev is None:
            d = random_nat(rng, G, H)
        else:
            cone = pointwise_kernel(prev)
            beta = random_nat(rng, G, cone.kernel)
            d = cone.inclusion @ beta
        diffs[lo + k] = d
        prev = d
    return FunctorComplex(C, lo, levels, diffs)


def random_functor_chainmap(rng: random.Random, G: FunctorComplex,
                            H: FunctorComplex) -> FunctorChainMap:
    """Random chain map found as a cycle of the end-based Hom complex."""
    FH = FunctorHomComplex(G, H)
    K = kernel_basis(FH.complex.diff(0))
    ring = G.ring
    v = [ring.zero] * K.nrows
    for j in range(K.ncols):
        c = scalar(rng, ring)
        v = [ring.norm(x + c * y) for x, y in zip(v, K.column(j))]
    nats = FH.split(0, v) if 0 in FH.factors else {}
    return FunctorChainMap(G, H, nats)


__all__ = [
    "scalar", "random_matrix", "random_complex", "random_chain_map", "random_category",
    "random_nat", "random_functor", "random_functor_complex", "random_functor_chainmap",
    "precompose_nat",
]
