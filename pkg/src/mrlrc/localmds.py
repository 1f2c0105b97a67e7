"""Local MDS ingredient codes: extended Reed-Solomon generators and the
structured band shapes [I_t B; 0 C] and [I_t B; 0 C; 0 D] that the global
constructions consume.

The canonical generator of the (n, k) extended Reed-Solomon code is the
k x n matrix whose column at the field point x is (1, x, x^2, ..., x^(k-1));
points are all of GF(q) in canonical integer order, and when n = q + 1 the
extra column is (0, ..., 0, 1).  Row-reducing this generator never uses a
randomized search, so every run produces identical matrices.

A useful consequence of the Vandermonde row structure: the span of the
first d rows is the degree-< d Reed-Solomon subcode, which is itself MDS
(for n <= q, where no extension column is involved).  structured_mds
exploits this to satisfy the extra requirement that the top rows of the
banded generator span an MDS code on their own.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ff import FieldCtx
from .matrix import MatrixF

IS_MDS_COLUMN_CAP = 24


class LengthExceedsField(ValueError):
    """Requested RS length exceeds q + 1."""


class APrimeNotMds(ValueError):
    """The prefix rows of a structured generator do not span an MDS code."""


class ColumnCapExceeded(ValueError):
    """is_mds enumeration refused beyond IS_MDS_COLUMN_CAP columns."""


@dataclass(frozen=True)
class MdsSpec:
    """Parameters of a local MDS code over GF(q): length n_loc, dimension k_loc."""

    ctx: FieldCtx
    n_loc: int
    k_loc: int

    def __post_init__(self):
        if not 0 <= self.k_loc <= self.n_loc:
            raise ValueError(f"need 0 <= k <= n, got k={self.k_loc}, n={self.n_loc}")
        if self.n_loc > self.ctx.order + 1:
            raise LengthExceedsField(
                f"length {self.n_loc} exceeds q + 1 = {self.ctx.order + 1}")


def vandermonde_columns(ctx: FieldCtx, rows: int, cols: int) -> MatrixF:
    """rows x cols matrix whose every min(rows, cols) columns are independent.

    Columns are (1, x, ..., x^(rows-1)) at the first cols canonical field
    points, plus the column (0, ..., 0, 1) when cols = q + 1.  For
    rows <= cols this is the extended RS generator; for rows > cols it is
    the tall evaluation matrix used to build l-wise independent sets.
    """
    if cols > ctx.order + 1:
        raise LengthExceedsField(f"length {cols} exceeds q + 1 = {ctx.order + 1}")
    npoints = min(cols, ctx.order)
    data = [[0] * cols for _ in range(rows)]
    for j in range(npoints):
        acc = 1
        for i in range(rows):
            data[i][j] = acc
            acc = ctx.mul(acc, j)
    if cols == ctx.order + 1 and rows > 0:
        data[rows - 1][cols - 1] = 1
    return MatrixF(ctx, data, cols=cols)


def extended_rs_generator(spec: MdsSpec) -> MatrixF:
    """Canonical generator of the (n_loc, k_loc) extended RS code."""
    return vandermonde_columns(spec.ctx, spec.k_loc, spec.n_loc)


def is_mds(g: MatrixF, column_cap: int = IS_MDS_COLUMN_CAP) -> bool:
    """True iff every k x k column submatrix of the k x n generator is invertible.

    Brute force over all C(n, k) choices; refuses to run beyond column_cap
    columns, since this is a desk-scale verification tool.
    """
    if g.rows > g.cols:
        raise ValueError("is_mds needs rows <= cols")
    if g.cols > column_cap:
        raise ColumnCapExceeded(f"{g.cols} columns exceed the cap {column_cap}")
    if g.rows == 0:
        return True
    for sel in itertools.combinations(range(1, g.cols + 1), g.rows):
        if g.restrict_columns(sel).det() == 0:
            return False
    return True


def structured_mds(spec: MdsSpec, t: int, split: tuple[int, ...],
                   check_prefix: int | None = None) -> MatrixF:
    """Generator of the canonical (n_loc, k_loc) RS code in banded form.

    The result is row-equivalent to extended_rs_generator(spec) and has
    first t columns equal to [I_t; 0].  split gives the row-band sizes
    (first band >= t); bands below the first are read off as the C / D
    blocks of the global constructions.

    The row reduction pivots only on the first t rows, so the span of any
    prefix of rows is the corresponding lower-degree RS subcode.  When
    check_prefix is given, the first check_prefix rows are additionally
    verified to span an MDS code (raising APrimeNotMds otherwise).
    """
    k, n = spec.k_loc, spec.n_loc
    if sum(split) != k:
        raise ValueError(f"split {split} does not partition k = {k}")
    if not split or split[0] < t:
        raise ValueError(f"first band must have at least t = {t} rows")
    if t > k:
        raise ValueError(f"t = {t} exceeds k = {k}")
    g = extended_rs_generator(spec)
    if t == 0:
        a = g
    else:
        ctx = spec.ctx
        # top-left t x t block is Vandermonde on distinct points: invertible
        top_rows = MatrixF(ctx, g.data[:t], cols=n)
        tinv = top_rows.restrict_columns(range(1, t + 1)).invert()
        new_top = tinv.mul(top_rows)
        rows = [list(r) for r in new_top.data]
        mul, add, neg = ctx.mul, ctx.add, ctx.neg
        for i in range(t, k):
            row = list(g.data[i])
            for j in range(t):
                c = row[j]
                if c:
                    f = neg(c)
                    row = [add(v, mul(f, w)) for v, w in zip(row, rows[j])]
            rows.append(row)
        a = MatrixF(ctx, rows)
    if check_prefix is not None:
        prefix = MatrixF(spec.ctx, a.data[:check_prefix], cols=n)
        if not is_mds(prefix):
            raise APrimeNotMds(
                f"top {check_prefix} rows do not span an MDS code")
    return a


def band_rows(a: MatrixF, split: tuple[int, ...]) -> list[MatrixF]:
    """Slice a banded generator into its row bands."""
    out = []
    r0 = 0
    for size in split:
        out.append(MatrixF(a.ctx, a.data[r0:r0 + size], cols=a.cols))
        r0 += size
    return out
