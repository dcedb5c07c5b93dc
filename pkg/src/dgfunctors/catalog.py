"""Small named categories and functors used as fixtures."""

from __future__ import annotations

from .enriched import VCategory, VFunctor, functor_from_actions, representable, unit_category
from .linalg import Matrix, RingSpec, QQ


def a2_category(ring: RingSpec = QQ) -> VCategory:
    """Two objects a, b with a single non-identity arrow a -> b."""
    one = Matrix.identity(ring, 1)
    homs = {("a", "a"): 1, ("b", "b"): 1, ("a", "b"): 1, ("b", "a"): 0}
    comp = {t: one for t in [("a", "a", "a"), ("a", "a", "b"), ("a", "b", "b"), ("b", "b", "b")]}
    return VCategory(ring, ["a", "b"], homs, comp, {"a": one, "b": one})


def mutated_a2(ring: RingSpec = QQ) -> VCategory:
    """A2 with the unit at a replaced by zero; fails the unit law."""
    return a2_category(ring).replace(unit={"a": Matrix.zeros(ring, 1, 1)})


def linear_path_category(ring: RingSpec, n: int) -> VCategory:
    """Objects 0..n-1 with hom(i, j) = e for i <= j and 0 otherwise."""
    obs = [str(i) for i in range(n)]
    one = Matrix.identity(ring, 1)
    homs = {(str(i), str(j)): int(i <= j) for i in range(n) for j in range(n)}
    comp = {(str(i), str(j), str(k)): one
            for i in range(n) for j in range(i, n) for k in range(j, n)}
    return VCategory(ring, obs, homs, comp, {o: one for o in obs})


def simple_functor(C: VCategory, at: str) -> VFunctor:
    """Rank one at ``at``, zero elsewhere; every non-identity basis arrow acts by zero.

    Only a functor when no basis element of ``hom(at, at)`` other than the
    unit's support acts nontrivially, which holds for the path categories here.
    """
    ring = C.ring
    ranks = {c: int(c == at) for c in C.objects}
    actions = {}
    for a in C.objects:
        for b in C.objects:
            mats = []
            for s in range(C.rank(a, b)):
                if a == b == at:
                    mats.append(Matrix(ring, [[C.unit(at).rows[s][0]]]))
                else:
                    mats.append(Matrix.zeros(ring, ranks[b], ranks[a]))
            actions[(a, b)] = mats
    return functor_from_actions(C, ranks, actions)


__all__ = ["a2_category", "mutated_a2", "linear_path_category", "simple_functor",
           "unit_category", "representable"]
