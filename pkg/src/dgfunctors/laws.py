"""Checks of the closed symmetric monoidal structure on complexes.

Each check recomputes the structure map by a second route and compares
exactly: the symmetry against its elementwise sign rule, the adjunction by
round trips, and composition of Hom complexes against the transpose of
iterated evaluation.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .chains import (ChainComplex, ChainMap, adjoint_chain, adjoint_chain_inv, assoc_chain,
                     chain_map_basis, compose_hom, eval_chain, hom_complex, hom_factors,
                     identity_map, symmetry_chain, tensor_chainmap, tensor_complex,
                     tensor_summands)
from .linalg import Matrix, kernel_basis
from .report import Failure, Report
from .sampling import scalar


def _maps_equal(f: ChainMap, g: ChainMap) -> int | None:
    """First degree where the components differ, or ``None``."""
    for n in sorted(set(f.degrees()) | set(g.degrees())):
        if f.component(n) != g.component(n):
            return n
    return None


def symmetry_by_elements(X: ChainComplex, Y: ChainComplex, n: int) -> Matrix:
    """Degree-``n`` symmetry written out basis vector by basis vector."""
    ring = X.ring
    src = tensor_summands(X, Y, n)
    tgt = tensor_summands(Y, X, n)
    toff, pos = {}, 0
    for q, p in tgt:
        toff[(q, p)] = pos
        pos += Y.rank(q) * X.rank(p)
    cols = []
    for p, q in src:
        sign = ring.norm(-ring.one) if (p * q) % 2 else ring.one
        for i in range(X.rank(p)):
            for j in range(Y.rank(q)):
                col = [ring.zero] * pos
                col[toff[(q, p)] + j * X.rank(p) + i] = sign
                cols.append(col)
    return Matrix.from_columns(ring, pos, cols) if cols else Matrix.zeros(ring, pos, 0)


def check_symmetry(X: ChainComplex, Y: ChainComplex) -> Report:
    rep = Report("symmetry of the tensor product of complexes (Koszul sign)")
    s = symmetry_chain(X, Y)
    back = symmetry_chain(Y, X)
    rep.checked += 3
    bad = s.chain_defect()
    if bad is not None:
        rep.add(Failure("symmetry is a chain map", (bad,)))
    bad = _maps_equal(back @ s, identity_map(s.source))
    if bad is not None:
        rep.add(Failure("symmetry squares to the identity", (bad,)))
    for n in s.degrees():
        if s.component(n) != symmetry_by_elements(X, Y, n):
            rep.add(Failure("summand signs (-1)^(pq)", (n,),
                            s.component(n) - symmetry_by_elements(X, Y, n)))
            break
    return rep


def _random_combination(rng: random.Random, basis: Sequence[ChainMap], X, Y) -> ChainMap:
    total = ChainMap(X, Y, {}, check=False)
    for f in basis:
        c = scalar(rng, X.ring)
        total = total + ChainMap(X, Y, {n: f.component(n).scale(c) for n in f.degrees()},
                                 check=False)
    return total


def check_adjunction(X: ChainComplex, Y: ChainComplex, Z: ChainComplex, samples: int = 5,
                     seed: int = 0) -> Report:
    """``phi`` and ``phi^{-1}`` on random chain maps, plus equal dimensions of both sides."""
    rng = random.Random(seed)
    rep = Report("tensor-Hom adjunction for complexes")
    XY = tensor_complex(X, Y)
    H = hom_complex(Y, Z)
    left_basis = chain_map_basis(XY, Z)
    right_basis = chain_map_basis(X, H)
    rep.checked += 1
    if len(left_basis) != len(right_basis):
        rep.add(Failure("both sides have the same rank",
                        detail=f"{len(left_basis)} != {len(right_basis)}"))
    for t in range(samples):
        k = _random_combination(rng, left_basis, XY, Z)
        g = adjoint_chain(k)
        rep.checked += 3
        if g.chain_defect() is not None:
            rep.add(Failure("transpose is a chain map", (t,)))
        if _maps_equal(adjoint_chain_inv(g), k) is not None:
            rep.add(Failure("inverse transpose undoes the transpose", (t,)))
        h = _random_combination(rng, right_basis, X, H)
        if _maps_equal(adjoint_chain(adjoint_chain_inv(h)), h) is not None:
            rep.add(Failure("transpose undoes the inverse transpose", (t,)))
    return rep


def composition_by_adjunction(A: ChainComplex, B: ChainComplex, C: ChainComplex) -> ChainMap:
    """Transpose of ``(f (.) g) (.) a |-> g(f(a))`` through symmetry, associator and evaluations."""
    HAB, HBC = hom_complex(A, B), hom_complex(B, C)
    swap = tensor_chainmap(symmetry_chain(HAB, HBC), identity_map(A))
    regroup = assoc_chain(HBC, HAB, A)
    inner = tensor_chainmap(identity_map(HBC), eval_chain(A, B))
    k = eval_chain(B, C) @ inner @ regroup @ swap
    return adjoint_chain(k)


def check_composition_sign(A: ChainComplex, B: ChainComplex, C: ChainComplex) -> Report:
    rep = Report("composition of Hom complexes (sign (-1)^(pq) on summand (p, q))")
    m = compose_hom(A, B, C)
    rep.checked += 2
    bad = m.chain_defect()
    if bad is not None:
        rep.add(Failure("composition is a chain map", (bad,)))
    bad = _maps_equal(m, composition_by_adjunction(A, B, C))
    if bad is not None:
        rep.add(Failure("composition matches the transpose of iterated evaluation", (bad,)))
    return rep


# --------------------------------------------------------------------------
# exhaustive counting over F_2


def graded_dimension(X: ChainComplex, Y: ChainComplex) -> int:
    return sum(X.rank(p) * Y.rank(p) for p in hom_factors(X, Y, 0))


def count_chain_maps_f2(X: ChainComplex, Y: ChainComplex, limit: int = 14) -> int:
    """Number of chain maps ``X -> Y`` over F_2 by enumerating every graded map.

    Each candidate is checked against ``d f = f d`` directly on bitmask rows,
    without any linear algebra.
    """
    if X.ring.kind != "F" or X.ring.p != 2:
        raise ValueError("exhaustive counting is implemented over F_2 only")
    degs = [p for p in X.degrees() if Y.in_window(p)]
    sizes = [(p, X.rank(p), Y.rank(p)) for p in degs]
    total_bits = sum(x * y for _, x, y in sizes)
    if total_bits > limit:
        raise ValueError(f"{total_bits} free entries exceed the enumeration limit {limit}")
    # matrices as lists of row bitmasks
    def rows_of(M: Matrix):
        return [sum(1 << j for j, v in enumerate(r) if v) for r in M.rows]

    dX = {p: rows_of(X.diff(p)) for p in range(X.lo, X.hi + 2)}
    dY = {p: rows_of(Y.diff(p)) for p in range(Y.lo, Y.hi + 2)}

    def apply(rows, vec):
        # rows: bitmask rows of a matrix; vec: bitmask
        out = 0
        for i, r in enumerate(rows):
            if bin(r & vec).count("1") & 1:
                out |= 1 << i
        return out

    count = 0
    for bits in itertools.product((0, 1), repeat=total_bits):
        f, pos = {}, 0
        for p, x, y in sizes:
            rows = []
            for i in range(y):
                rows.append(sum(bits[pos + i * x + j] << j for j in range(x)))
            f[p] = rows
            pos += x * y
        ok = True
        for p in range(X.lo, X.hi + 2):
            # compare d^Y_p f_p and f_{p-1} d^X_p on each basis vector of X_p
            for j in range(X.rank(p)):
                e = 1 << j
                lhs = apply(dY[p], apply(f[p], e)) if p in f and Y.in_window(p - 1) else 0
                rhs = apply(f[p - 1], apply(dX[p], e)) if p - 1 in f else 0
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def adjunction_counts_f2(X: ChainComplex, Y: ChainComplex, Z: ChainComplex,
                         limit: int = 14) -> tuple[int, int]:
    """Exhaustive counts of chain maps ``X (.) Y -> Z`` and ``X -> Hom(Y, Z)``."""
    return (count_chain_maps_f2(tensor_complex(X, Y), Z, limit),
            count_chain_maps_f2(X, hom_complex(Y, Z), limit))


def chain_map_rank(X: ChainComplex, Y: ChainComplex) -> int:
    return kernel_basis(hom_complex(X, Y).diff(0)).ncols


__all__ = [
    "check_symmetry", "symmetry_by_elements", "check_adjunction", "composition_by_adjunction",
    "check_composition_sign", "count_chain_maps_f2", "adjunction_counts_f2", "graded_dimension",
    "chain_map_rank",
]
