"""Exact matrix arithmetic over the rationals, prime fields and the integers.

Morphisms act on column vectors, so the composite ``g o f`` is the matrix
product ``G @ F``.  Kronecker products use row-major index pairs with the
left factor's index most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class RingMismatch(ValueError):
    pass


class ShapeError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "Q", "Z" or "F"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Q", "Z", "F"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "F":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"ring {self.kind} takes no modulus")

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text in ("Z", "ZZ"):
            return ZZ
        for prefix in ("F", "GF", "F_"):
            if text.startswith(prefix) and text[len(prefix):].isdigit():
                return cls("F", int(text[len(prefix):]))
        raise ValueError(f"cannot parse ring {text!r}")

    def __str__(self):
        return f"F{self.p}" if self.kind == "F" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def coerce(self, x):
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                if self.kind == "Z":
                    raise ValueError(f"{x} is not an integer")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            x = x.numerator
        if isinstance(x, bool) or not isinstance(x, int):
            x = int(x)
        return x % self.p if self.kind == "F" else x

    def norm(self, x):
        # canonical form after ring arithmetic on canonical inputs
        return x % self.p if self.kind == "F" else x

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def inverse(self, x):
        if self.kind == "Q":
            return 1 / x
        if self.kind == "F":
            return pow(x, -1, self.p)
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def format(self, x) -> str:
        return str(x)

    def parse_scalar(self, token: str):
        if self.kind == "Q":
            return Fraction(token)
        if "/" in token or "." in token:
            raise ValueError(f"non-integer scalar {token!r} over {self}")
        value = int(token)
        if self.kind == "F" and not 0 <= value < self.p:
            raise ValueError(f"{token} is not a canonical representative mod {self.p}")
        return value


QQ = RingSpec("Q")
ZZ = RingSpec("Z")


def GF(p: int) -> RingSpec:
    return RingSpec("F", p)


class Matrix:
    """Immutable dense matrix with canonical exact entries."""

    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring: RingSpec, rows: Iterable[Sequence], nrows: int | None = None,
                 ncols: int | None = None):
        data = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise ShapeError(f"ragged or mis-sized rows for a {nrows}x{ncols} matrix")
        self._init(ring, data, nrows, ncols)

    def _init(self, ring, data, nrows, ncols):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, ring, data, nrows, ncols) -> "Matrix":
        # trusts that data is a tuple of tuples of canonical entries
        m = object.__new__(cls)
        m._init(ring, data, nrows, ncols)
        return m

    @classmethod
    def zeros(cls, ring: RingSpec, nrows: int, ncols: int) -> "Matrix":
        z = ring.zero
        return cls._raw(ring, tuple((z,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls._raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, ring: RingSpec, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        cols = [tuple(ring.coerce(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ShapeError("column length mismatch")
        return cls._raw(ring, tuple(tuple(c[i] for c in cols) for i in range(nrows)), nrows, len(cols))

    @classmethod
    def permutation(cls, ring: RingSpec, images: Sequence[int], nrows: int | None = None,
                    signs: Sequence[int] | None = None) -> "Matrix":
        """Matrix sending basis vector ``j`` to ``signs[j] * e_{images[j]}``."""
        n = len(images) if nrows is None else nrows
        data = [[ring.zero] * len(images) for _ in range(n)]
        for j, i in enumerate(images):
            data[i][j] = ring.coerce(1 if signs is None else signs[j])
        return cls._raw(ring, tuple(map(tuple, data)), n, len(images))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, self.shape, self.rows)))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.ring}, {[list(map(str, r)) for r in self.rows]}, {self.nrows}x{self.ncols})"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def _check(self, other: "Matrix"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        nm = self.ring.norm
        return Matrix._raw(self.ring, tuple(tuple(nm(a + b) for a, b in zip(r, s))
                                            for r, s in zip(self.rows, other.rows)),
                           self.nrows, self.ncols)

    def __neg__(self) -> "Matrix":
        nm = self.ring.norm
        return Matrix._raw(self.ring, tuple(tuple(nm(-a) for a in r) for r in self.rows),
                           self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring.coerce(c)
        nm = self.ring.norm
        return Matrix._raw(self.ring, tuple(tuple(nm(c * a) for a in r) for r in self.rows),
                           self.nrows, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.ring, tuple(zip(*self.rows)) if self.nrows else
                           tuple(() for _ in range(self.ncols)), self.ncols, self.nrows)

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> "Matrix":
        return Matrix._raw(self.ring, tuple(tuple(self.rows[i][j] for j in cols) for i in rows),
                           len(rows), len(cols))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw(self.ring, tuple(r[c0:c1] for r in self.rows[r0:r1]), r1 - r0, c1 - c0)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if A.ncols != B.nrows:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    ring = A.ring
    nm = ring.norm
    z = ring.zero
    bcols = list(zip(*B.rows)) if B.nrows else [()] * B.ncols
    out = []
    for r in A.rows:
        nz = [(k, a) for k, a in enumerate(r) if a]
        if not nz:
            out.append((z,) * B.ncols)
            continue
        out.append(tuple(nm(sum((a * c[k] for k, a in nz), z)) for c in bcols))
    return Matrix._raw(ring, tuple(out), A.nrows, B.ncols)


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    """Block matrix ``A (x) B``; row ``(i_A, i_B)`` sits at ``i_A * B.nrows + i_B``."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    nm = A.ring.norm
    data = []
    for ra in A.rows:
        for rb in B.rows:
            data.append(tuple(nm(a * b) for a in ra for b in rb))
    return Matrix._raw(A.ring, tuple(data), A.nrows * B.nrows, A.ncols * B.ncols)


def hstack(ring: RingSpec, nrows: int, blocks: Sequence[Matrix]) -> Matrix:
    for b in blocks:
        if b.nrows != nrows or b.ring != ring:
            raise ShapeError("hstack: row count or ring mismatch")
    data = tuple(tuple(x for b in blocks for x in b.rows[i]) for i in range(nrows))
    return Matrix._raw(ring, data, nrows, sum(b.ncols for b in blocks))


def vstack(ring: RingSpec, ncols: int, blocks: Sequence[Matrix]) -> Matrix:
    for b in blocks:
        if b.ncols != ncols or b.ring != ring:
            raise ShapeError("vstack: column count or ring mismatch")
    data = tuple(r for b in blocks for r in b.rows)
    return Matrix._raw(ring, data, len(data), ncols)


def block_diag(ring: RingSpec, blocks: Sequence[Matrix]) -> Matrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    z = ring.zero
    data = []
    c0 = 0
    for b in blocks:
        if b.ring != ring:
            raise RingMismatch(f"{b.ring} vs {ring}")
        for r in b.rows:
            data.append((z,) * c0 + r + (z,) * (ncols - c0 - b.ncols))
        c0 += b.ncols
    return Matrix._raw(ring, tuple(data), nrows, ncols)


def assemble(ring: RingSpec, row_sizes: Sequence[int], col_sizes: Sequence[int],
             blocks: dict[tuple[int, int], Matrix]) -> Matrix:
    """Block matrix from a sparse dict ``{(block_row, block_col): M}``."""
    nrows, ncols = sum(row_sizes), sum(col_sizes)
    data = [[ring.zero] * ncols for _ in range(nrows)]
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    nm = ring.norm
    for (bi, bj), M in blocks.items():
        if M.shape != (row_sizes[bi], col_sizes[bj]):
            raise ShapeError(f"block {(bi, bj)} has shape {M.shape}, expected "
                             f"{(row_sizes[bi], col_sizes[bj])}")
        r0, c0 = roff[bi], coff[bj]
        for i, r in enumerate(M.rows):
            row = data[r0 + i]
            for j, x in enumerate(r):
                if x:
                    row[c0 + j] = nm(row[c0 + j] + x)
    return Matrix._raw(ring, tuple(map(tuple, data)), nrows, ncols)


# --------------------------------------------------------------------------
# Diagonalization.  ``_reduce`` returns P, Pinv, Q, Qinv and the diagonal with
# P @ A @ Q = D.  Over Z this is the Smith normal form; over a field the
# nonzero diagonal entries are all 1.


class _Reduction:
    __slots__ = ("ring", "m", "n", "diag", "P", "Pinv", "Q", "Qinv")

    @property
    def rank(self) -> int:
        return len(self.diag)


def _ident(ring, n):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def _reduce(A: Matrix) -> _Reduction:
    ring = A.ring
    m, n = A.shape
    a = [list(r) for r in A.rows]
    P, Pinv, Q, Qinv = _ident(ring, m), _ident(ring, m), _ident(ring, n), _ident(ring, n)
    nm = ring.norm

    # elementary operations mirrored on the transforms
    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]
        for r in Pinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]
        Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def row_addmul(i, t, q):
        # row_i += q * row_t
        ai, at = a[i], a[t]
        for k in range(n):
            if at[k]:
                ai[k] = nm(ai[k] + q * at[k])
        Pi, Pt = P[i], P[t]
        for k in range(m):
            if Pt[k]:
                Pi[k] = nm(Pi[k] + q * Pt[k])
        for r in Pinv:
            if r[i]:
                r[t] = nm(r[t] - q * r[i])

    def col_addmul(j, t, q):
        # col_j += q * col_t
        for r in a:
            if r[t]:
                r[j] = nm(r[j] + q * r[t])
        for r in Q:
            if r[t]:
                r[j] = nm(r[j] + q * r[t])
        Qj, Qt = Qinv[j], Qinv[t]
        for k in range(n):
            if Qj[k]:
                Qt[k] = nm(Qt[k] - q * Qj[k])

    def row_scale(i, u):
        # multiply row i by the unit u
        ui = ring.inverse(u)
        a[i] = [nm(u * x) for x in a[i]]
        P[i] = [nm(u * x) for x in P[i]]
        for r in Pinv:
            r[i] = nm(ui * r[i])

    diag = []
    t = 0
    if ring.is_field:
        while t < min(m, n):
            piv = next(((i, j) for j in range(t, n) for i in range(t, m) if a[i][j]), None)
            if piv is None:
                break
            i, j = piv
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            if a[t][t] != ring.one:
                row_scale(t, ring.inverse(a[t][t]))
            for i in range(t + 1, m):
                if a[i][t]:
                    row_addmul(i, t, nm(-a[i][t]))
            for j in range(t + 1, n):
                if a[t][j]:
                    col_addmul(j, t, nm(-a[t][j]))
            diag.append(ring.one)
            t += 1
    else:
        while t < min(m, n):
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            while True:
                piv = a[t][t]
                for i in range(t + 1, m):
                    if a[i][t]:
                        row_addmul(i, t, -(a[i][t] // piv))
                for j in range(t + 1, n):
                    if a[t][j]:
                        col_addmul(j, t, -(a[t][j] // piv))
                cand = [(abs(a[i][t]), i, None) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), None, j) for j in range(t + 1, n) if a[t][j]]
                if cand:
                    _, i, j = min(cand, key=lambda c: (c[0], c[1] or 0, c[2] or 0))
                    if i is not None:
                        row_swap(i, t)
                    else:
                        col_swap(j, t)
                    continue
                bad = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % piv), None)
                if bad is None:
                    break
                row_addmul(t, bad, 1)
            if a[t][t] < 0:
                row_scale(t, -1)
            diag.append(a[t][t])
            t += 1

    red = _Reduction()
    red.ring, red.m, red.n, red.diag = ring, m, n, diag
    to = lambda rows, k: Matrix._raw(ring, tuple(map(tuple, rows)), k, k)
    red.P, red.Pinv, red.Q, red.Qinv = to(P, m), to(Pinv, m), to(Q, n), to(Qinv, n)
    return red


def rank(A: Matrix) -> int:
    return _reduce(A).rank


def smith_normal_form(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``A == U @ D @ V``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal with non-negative entries forming a divisibility chain.
    """
    if A.ring != ZZ:
        raise RingMismatch("smith_normal_form needs an integer matrix; use rank() over fields")
    red = _reduce(A)
    D = [[0] * A.ncols for _ in range(A.nrows)]
    for i, d in enumerate(red.diag):
        D[i][i] = d
    return red.Pinv, Matrix._raw(ZZ, tuple(map(tuple, D)), A.nrows, A.ncols), red.Qinv


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a basis of ker(A); over Z a basis of the kernel lattice."""
    return kernel_with_retraction(A)[0]


def kernel_with_retraction(A: Matrix) -> tuple[Matrix, Matrix]:
    """``(K, L)`` with K's columns a kernel basis and ``L @ K`` the identity."""
    red = _reduce(A)
    r, n = red.rank, A.ncols
    return red.Q.submatrix(range(n), range(r, n)), red.Qinv.submatrix(range(r, n), range(n))


def cokernel_projection(A: Matrix) -> tuple[Matrix, Matrix]:
    """``(pi, s)`` with ``pi`` onto a free cokernel, ``pi @ A == 0`` and ``pi @ s == I``.

    Over Z the cokernel must be torsion-free; otherwise ``ValueError``.
    """
    red = _reduce(A)
    r, m = red.rank, A.nrows
    if any(not A.ring.is_unit(d) for d in red.diag):
        raise ValueError("cokernel has torsion and is not a free module")
    return red.P.submatrix(range(r, m), range(m)), red.Pinv.submatrix(range(m), range(r, m))


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Some ``X`` with ``A @ X == B``, or ``None`` when no exact solution exists."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if A.nrows != B.nrows:
        raise ShapeError(f"cannot solve {A.shape} against {B.shape}")
    ring = A.ring
    red = _reduce(A)
    PB = red.P @ B
    r = red.rank
    for i in range(r, A.nrows):
        if any(PB.rows[i]):
            return None
    Y = [[ring.zero] * B.ncols for _ in range(A.ncols)]
    for i in range(r):
        d = red.diag[i]
        for j, x in enumerate(PB.rows[i]):
            if ring.is_field:
                Y[i][j] = ring.norm(x * ring.inverse(d))
            else:
                if x % d:
                    return None
                Y[i][j] = x // d
    return red.Q @ Matrix._raw(ring, tuple(map(tuple, Y)), A.ncols, B.ncols)


def inverse(A: Matrix) -> Matrix:
    if A.nrows != A.ncols:
        raise ShapeError("inverse of a non-square matrix")
    X = solve(A, Matrix.identity(A.ring, A.nrows))
    if X is None or A.nrows != rank(A):
        raise ValueError("matrix is not invertible over its ring")
    return X


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PresentedModule:
    """Finitely generated module: ``R^free_rank`` plus ``(+) R/d_i``."""

    ring: RingSpec
    free_rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        facs = tuple(self.invariant_factors)
        if self.ring.is_field and facs:
            raise ValueError("a module over a field has no torsion")
        for d in facs:
            if d <= 1:
                raise ValueError(f"invariant factor {d} must exceed 1")
        for d1, d2 in zip(facs, facs[1:]):
            if d2 % d1:
                raise ValueError(f"invariant factors {d1}, {d2} break the divisibility chain")
        object.__setattr__(self, "invariant_factors", facs)

    @classmethod
    def zero(cls, ring: RingSpec) -> "PresentedModule":
        return cls(ring, 0)

    @classmethod
    def from_relations(cls, ring: RingSpec, ngens: int, relations: Matrix) -> "PresentedModule":
        """Cokernel of ``relations: R^k -> R^ngens``."""
        if relations.nrows != ngens:
            raise ShapeError("relation matrix must have one row per generator")
        red = _reduce(relations)
        facs = tuple(d for d in red.diag if not ring.is_unit(d))
        return cls(ring, ngens - red.rank, facs)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        facs = self.invariant_factors + other.invariant_factors
        n = len(facs)
        rel = Matrix._raw(self.ring, tuple(tuple(facs[i] if i == j else 0 for j in range(n))
                                           for i in range(n)), n, n)
        tors = PresentedModule.from_relations(self.ring, n, rel)
        return PresentedModule(self.ring, self.free_rank + other.free_rank,
                               tors.invariant_factors)

    def __str__(self):
        if self.ring.is_field:
            return f"{self.ring}^{self.free_rank}" if self.free_rank else "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def homology_at(d_in: Matrix, d_out: Matrix) -> PresentedModule:
    """ker(d_out) / im(d_in) in invariant-factor form."""
    if d_in.ring != d_out.ring:
        raise RingMismatch(f"{d_in.ring} vs {d_out.ring}")
    if d_in.nrows != d_out.ncols:
        raise ShapeError(f"d_in {d_in.shape} and d_out {d_out.shape} do not compose")
    if not (d_out @ d_in).is_zero():
        raise ValueError("d_out @ d_in is nonzero")
    ring = d_in.ring
    red = _reduce(d_out)
    r, n = red.rank, d_out.ncols
    # coordinates of im(d_in) in the kernel basis Q[:, r:]
    coords = (red.Qinv @ d_in).submatrix(range(r, n), range(d_in.ncols))
    return PresentedModule.from_relations(ring, n - r, coords)
