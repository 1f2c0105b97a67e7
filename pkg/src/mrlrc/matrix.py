"""Dense exact linear algebra over a FieldCtx.

Matrices are immutable (tuple-of-tuples storage); every operation returns
a new matrix.  Elimination pivots on the first nonzero entry scanning
top-to-bottom, so echelon forms are identical across runs.

Index conventions: plain Python 0-based indexing for raw entry access,
but the column-set operations (restrict_columns, systematic_form) take
1-based sorted index sets, matching the coordinate sets [n] used by the
code-topology layer and all file formats.

The "SRMAT v1" text format serializes a matrix as a header line
``srmat p=<p> e=<e> rows=<r> cols=<c>`` followed by one line per row of
whitespace-separated canonical integer encodings.  The modulus is implied
by the canonical choice in ff, so round-trips are bit-exact.
"""

from __future__ import annotations

from .ff import FieldCtx, field_ctx


class DimensionMismatch(ValueError):
    """Operand shapes are incompatible."""


class IndexOutOfRange(IndexError):
    """A 1-based column index is outside [1, cols]."""


class Singular(ValueError):
    """Square matrix has no inverse."""


class MixedFields(ValueError):
    """Operands live over different field contexts."""


class NotInvertibleOnPivots(ValueError):
    """The requested pivot submatrix is singular."""


class RankDeficient(ValueError):
    """Input matrix does not have full rank where required."""


class MatrixF:
    """A rows x cols matrix over a FieldCtx, immutable after construction."""

    __slots__ = ("ctx", "rows", "cols", "data")

    def __init__(self, ctx: FieldCtx, data, cols: int | None = None):
        rows = tuple(tuple(r) for r in data)
        ncols = len(rows[0]) if rows else (cols or 0)
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            for v in r:
                if not ctx.is_element(v):
                    raise ValueError(f"{v} is not an element of {ctx!r}")
        self.ctx = ctx
        self.rows = len(rows)
        self.cols = ncols
        self.data = rows

    # -- constructors

    @staticmethod
    def zeros(ctx: FieldCtx, rows: int, cols: int) -> "MatrixF":
        return MatrixF(ctx, [(0,) * cols] * rows, cols=cols)

    @staticmethod
    def identity(ctx: FieldCtx, n: int) -> "MatrixF":
        return MatrixF(ctx, [[int(i == j) for j in range(n)] for i in range(n)])

    @staticmethod
    def row_vector(ctx: FieldCtx, values) -> "MatrixF":
        return MatrixF(ctx, [tuple(values)])

    @staticmethod
    def column_vector(ctx: FieldCtx, values) -> "MatrixF":
        return MatrixF(ctx, [(v,) for v in values])

    # -- basics

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixF)
            and self.ctx == other.ctx
            and self.data == other.data
            and self.cols == other.cols
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.cols, self.data))

    def __repr__(self) -> str:
        return f"MatrixF({self.ctx!r}, {self.rows}x{self.cols})"

    def transpose(self) -> "MatrixF":
        if self.rows == 0:
            return MatrixF(self.ctx, [()] * self.cols, cols=0)
        return MatrixF(self.ctx, list(zip(*self.data)), cols=self.rows)

    def mul(self, other: "MatrixF") -> "MatrixF":
        if self.ctx != other.ctx:
            raise MixedFields("matrix product over different fields")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.cols} columns vs {other.rows} rows")
        ctx = self.ctx
        if self.cols == 0:
            return MatrixF.zeros(ctx, self.rows, other.cols)
        mul, add = ctx.mul, ctx.add
        ot = list(zip(*other.data))
        out = []
        for r in self.data:
            out_r = []
            for c in ot:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = add(acc, mul(a, b))
                out_r.append(acc)
            out.append(out_r)
        return MatrixF(ctx, out, cols=other.cols)

    def scale(self, c: int) -> "MatrixF":
        mul = self.ctx.mul
        return MatrixF(self.ctx, [[mul(c, v) for v in r] for r in self.data])

    def add(self, other: "MatrixF") -> "MatrixF":
        if self.ctx != other.ctx:
            raise MixedFields("matrix sum over different fields")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in sum")
        add = self.ctx.add
        return MatrixF(self.ctx, [
            [add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ])

    def vstack(self, other: "MatrixF") -> "MatrixF":
        if self.ctx != other.ctx:
            raise MixedFields("stack over different fields")
        if self.cols != other.cols and self.rows and other.rows:
            raise DimensionMismatch("column count mismatch in vstack")
        return MatrixF(self.ctx, self.data + other.data)

    def hstack(self, other: "MatrixF") -> "MatrixF":
        if self.ctx != other.ctx:
            raise MixedFields("stack over different fields")
        if self.rows != other.rows:
            raise DimensionMismatch("row count mismatch in hstack")
        return MatrixF(self.ctx, [ra + rb for ra, rb in zip(self.data, other.data)],
                       cols=self.cols + other.cols)

    def with_entry(self, i: int, j: int, value: int) -> "MatrixF":
        """Copy with one entry replaced (0-based); used by mutation tests."""
        rows = [list(r) for r in self.data]
        rows[i][j] = value
        return MatrixF(self.ctx, rows)

    # -- elimination core

    def _echelon(self, data: list[list[int]], limit_cols: int | None = None):
        """In-place reduced row echelon; returns pivot column list (0-based)."""
        ctx = self.ctx
        mul, add, neg, inv = ctx.mul, ctx.add, ctx.neg, ctx.inv
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        stop = ncols if limit_cols is None else limit_cols
        pivots = []
        r = 0
        for c in range(stop):
            pr = next((i for i in range(r, nrows) if data[i][c]), None)
            if pr is None:
                continue
            data[r], data[pr] = data[pr], data[r]
            f = inv(data[r][c])
            if f != 1:
                data[r] = [mul(f, v) for v in data[r]]
            prow = data[r]
            for i in range(nrows):
                if i != r and data[i][c]:
                    g = neg(data[i][c])
                    row = data[i]
                    data[i] = [add(v, mul(g, w)) for v, w in zip(row, prow)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return pivots

    def rank(self) -> int:
        data = [list(r) for r in self.data]
        return len(self._echelon(data))

    def det(self) -> int:
        """Determinant by elimination (forward only, tracking row swaps)."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of non-square matrix")
        ctx = self.ctx
        mul, add, neg, inv = ctx.mul, ctx.add, ctx.neg, ctx.inv
        n = self.rows
        data = [list(r) for r in self.data]
        det = 1
        for c in range(n):
            pr = next((i for i in range(c, n) if data[i][c]), None)
            if pr is None:
                return 0
            if pr != c:
                data[c], data[pr] = data[pr], data[c]
                det = neg(det)
            piv = data[c][c]
            det = mul(det, piv)
            f = inv(piv)
            prow = data[c]
            for i in range(c + 1, n):
                if data[i][c]:
                    g = neg(mul(f, data[i][c]))
                    data[i] = [add(v, mul(g, w)) for v, w in zip(data[i], prow)]
        return det

    def solve_unique(self, b) -> tuple[int, ...] | None:
        """The unique x with M x = b, or None when no unique solution exists.

        Requires rows >= cols.  b is a length-rows sequence.
        """
        b = tuple(b)
        if self.rows < self.cols:
            raise DimensionMismatch("solve_unique needs rows >= cols")
        if len(b) != self.rows:
            raise DimensionMismatch("right-hand side length mismatch")
        data = [list(r) + [bv] for r, bv in zip(self.data, b)]
        if not data:
            return () if self.cols == 0 else None
        pivots = self._echelon(data, limit_cols=self.cols)
        if len(pivots) < self.cols:
            return None
        # consistency: rows beyond the pivots must have zero RHS
        for i in range(len(pivots), self.rows):
            if data[i][self.cols]:
                return None
        return tuple(data[i][self.cols] for i in range(self.cols))

    def restrict_columns(self, cols_1based) -> "MatrixF":
        """Column submatrix, in the order given; indices are 1-based."""
        idx = list(cols_1based)
        for j in idx:
            if not 1 <= j <= self.cols:
                raise IndexOutOfRange(f"column {j} outside [1, {self.cols}]")
        return MatrixF(self.ctx, [tuple(r[j - 1] for j in idx) for r in self.data],
                       cols=len(idx))

    def invert(self) -> "MatrixF":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.rows
        data = [list(r) + [int(i == k) for k in range(n)]
                for i, r in enumerate(self.data)]
        pivots = self._echelon(data, limit_cols=n) if n else []
        if len(pivots) < n:
            raise Singular("matrix is singular")
        return MatrixF(self.ctx, [row[n:] for row in data])

    def right_kernel(self) -> "MatrixF":
        """Basis of {x : Mx = 0} as columns; cols - rank of them."""
        data = [list(r) for r in self.data]
        pivots = self._echelon(data)
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        neg = self.ctx.neg
        basis_cols = []
        for fc in free:
            vec = [0] * self.cols
            vec[fc] = 1
            for i, pc in enumerate(pivots):
                vec[pc] = neg(data[i][fc])
            basis_cols.append(vec)
        if not basis_cols:
            return MatrixF.zeros(self.ctx, self.cols, 0)
        return MatrixF(self.ctx, [list(col) for col in zip(*basis_cols)])

    def systematic_form(self, pivot_cols_1based) -> "MatrixF":
        """Row-equivalent matrix that is the identity on the given columns.

        pivot_cols must contain exactly ``rows`` 1-based indices; raises
        NotInvertibleOnPivots when the pivot submatrix is singular.
        """
        pivots = sorted(set(pivot_cols_1based))
        if len(pivots) != self.rows:
            raise DimensionMismatch(
                f"need exactly {self.rows} pivot columns, got {len(pivots)}")
        sub = self.restrict_columns(pivots)
        try:
            t = sub.invert()
        except Singular:
            raise NotInvertibleOnPivots(f"singular on columns {pivots}") from None
        return t.mul(self)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.data for v in r)


def block_diag(blocks) -> MatrixF:
    """Block-diagonal assembly; all blocks must share one field context."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("need at least one block")
    ctx = blocks[0].ctx
    for b in blocks:
        if b.ctx != ctx:
            raise MixedFields("block_diag over different fields")
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    out = [[0] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.data[i]
        r0 += b.rows
        c0 += b.cols
    return MatrixF(ctx, out)


def map_entries(m: MatrixF, ctx: FieldCtx, fn) -> MatrixF:
    """New matrix over ctx with fn applied to every entry."""
    return MatrixF(ctx, [[fn(v) for v in r] for r in m.data])


# ---------------------------------------------------------------------------
# SRMAT v1 serialization


def srmat_dumps(m: MatrixF) -> str:
    head = f"srmat p={m.ctx.p} e={m.ctx.e} rows={m.rows} cols={m.cols}"
    lines = [head] + [" ".join(str(v) for v in r) for r in m.data]
    return "\n".join(lines) + "\n"


def srmat_loads(text: str) -> MatrixF:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("srmat "):
        raise ValueError("not an SRMAT v1 payload")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    p, e = int(fields["p"]), int(fields["e"])
    rows, cols = int(fields["rows"]), int(fields["cols"])
    ctx = field_ctx(p, e)
    data = []
    for ln in lines[1:1 + rows]:
        row = [int(tok) for tok in ln.split()]
        if len(row) != cols:
            raise ValueError("SRMAT row width mismatch")
        data.append(row)
    if len(data) != rows:
        raise ValueError("SRMAT row count mismatch")
    if rows == 0:
        return MatrixF.zeros(ctx, 0, cols)
    return MatrixF(ctx, data)


def write_srmat(m: MatrixF, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(srmat_dumps(m))


def read_srmat(path) -> MatrixF:
    with open(path, "r", encoding="ascii") as fh:
        return srmat_loads(fh.read())
