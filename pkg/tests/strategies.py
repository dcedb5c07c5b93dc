"""Hypothesis strategies: a seed drives the seeded samplers in the package."""

import random

from hypothesis import strategies as st

from dgfunctors.linalg import GF, QQ, ZZ, Matrix

RINGS = [GF(2), GF(3), GF(5), QQ, ZZ]
FIELDS = [GF(2), GF(3), GF(5), QQ]

rings = st.sampled_from(RINGS)
fields = st.sampled_from(FIELDS)
rngs = st.integers(0, 2**32 - 1).map(random.Random)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4, lo=-9, hi=9):
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(0, max_cols))
    rows = [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(m)]
    return Matrix(ZZ, rows, m, n)


@st.composite
def matrices(draw, ring=None, max_rows=4, max_cols=4):
    ring = ring or draw(rings)
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(0, max_cols))
    rows = [[draw(st.integers(-5, 5)) for _ in range(n)] for _ in range(m)]
    return Matrix(ring, rows, m, n)
