"""Exact dense matrices over a supported PID, with normal forms.

A morphism R^a -> R^b is a b x a matrix acting on column vectors.
Zero-dimensional matrices are legal everywhere: they are the unique
maps to and from R^0, and degenerate complexes need them.

All values are immutable after construction and all operations are
pure and deterministic.  Intermediate entry growth over Z is accepted;
the intended scale is matrices up to roughly 12 x 12.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSurjective, ShapeMismatch
from .rings import Ring, ring_from_descriptor


class Matrix:
    """Immutable rectangular matrix over a ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Iterable[Iterable]):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative dimensions {rows}x{cols}")
        grid = tuple(tuple(row) for row in entries)
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ShapeMismatch(f"entry grid does not match {rows}x{cols}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(ring, r, c, rows)

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        z = ring.zero()
        return cls(ring, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero(), ring.one()
        return cls(ring, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, ring: Ring, n: int, value) -> "Matrix":
        z = ring.zero()
        return cls(ring, n, n, [[value if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, ring: Ring, values: Sequence) -> "Matrix":
        return cls(ring, len(values), 1, [[v] for v in values])

    # -- basics ------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.ring.format(e) for e in row) for row in self.entries
        )
        return f"Matrix({self.ring}, {self.rows}x{self.cols}, [{body}])"

    def is_zero(self) -> bool:
        R = self.ring
        return all(R.is_zero(e) for row in self.entries for e in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- algebra -----------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        R = self.ring
        z = R.zero()
        out = []
        for i in range(self.rows):
            srow = self.entries[i]
            orow = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    acc = R.add(acc, R.mul(srow[k], other.entries[k][j]))
                orow.append(acc)
            out.append(orow)
        return Matrix(R, self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        R = self.ring
        return Matrix(
            R,
            self.rows,
            self.cols,
            [
                [R.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        R = self.ring
        return Matrix(
            R, self.rows, self.cols, [[R.neg(e) for e in row] for row in self.entries]
        )

    def scale(self, c) -> "Matrix":
        R = self.ring
        return Matrix(
            R, self.rows, self.cols, [[R.mul(c, e) for e in row] for row in self.entries]
        )

    def transpose(self) -> "Matrix":
        return Matrix(
            self.ring,
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(
            self.ring,
            self.rows,
            self.cols + other.cols,
            [ra + rb for ra, rb in zip(self.entries, other.entries)],
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(
            self.ring, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def take_columns(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(
            self.ring,
            self.rows,
            len(indices),
            [[row[j] for j in indices] for row in self.entries],
        )

    def take_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(
            self.ring, len(indices), self.cols, [self.entries[i] for i in indices]
        )

    # -- serialization -----------------------------------------------

    def to_json(self) -> dict:
        R = self.ring
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[R.format(e) for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, ring: Ring, payload: dict) -> "Matrix":
        for field in ("rows", "cols", "entries"):
            if field not in payload:
                raise ValueError(f'matrix JSON missing "{field}"')
        entries = [[ring.parse(s) for s in row] for row in payload["entries"]]
        return cls(ring, int(payload["rows"]), int(payload["cols"]), entries)


def block_diag(*blocks: Matrix) -> Matrix:
    """Block-diagonal sum; at least one block fixes the ring."""
    if not blocks:
        raise ValueError("block_diag needs at least one block")
    R = blocks[0].ring
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = R.zero()
    grid = [[z] * cols for _ in range(rows)]
    ro = co = 0
    for b in blocks:
        for i in range(b.rows):
            grid[ro + i][co : co + b.cols] = b.entries[i]
        ro += b.rows
        co += b.cols
    return Matrix(R, rows, cols, grid)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


class _Worksheet:
    """Mutable elimination state: the matrix plus its two transforms.

    Row operations act on (a, u) so that u tracks the accumulated left
    transform; column operations act on (a, v).  The invariant
    u * original * v == a holds throughout.
    """

    def __init__(self, m: Matrix):
        self.R = m.ring
        self.rows, self.cols = m.rows, m.cols
        self.a = [list(row) for row in m.entries]
        self.u = [list(row) for row in Matrix.identity(m.ring, m.rows).entries]
        self.v = [list(row) for row in Matrix.identity(m.ring, m.cols).entries]

    def row_swap(self, i, j):
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]

    def col_swap(self, i, j):
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]

    def row_addmul(self, i, j, c):
        # row_i += c * row_j
        R = self.R
        self.a[i] = [R.add(x, R.mul(c, y)) for x, y in zip(self.a[i], self.a[j])]
        self.u[i] = [R.add(x, R.mul(c, y)) for x, y in zip(self.u[i], self.u[j])]

    def col_addmul(self, i, j, c):
        # col_i += c * col_j
        R = self.R
        for row in self.a:
            row[i] = R.add(row[i], R.mul(c, row[j]))
        for row in self.v:
            row[i] = R.add(row[i], R.mul(c, row[j]))

    def row_scale(self, i, unit):
        R = self.R
        self.a[i] = [R.mul(unit, x) for x in self.a[i]]
        self.u[i] = [R.mul(unit, x) for x in self.u[i]]

    def row_combine(self, i, j, s, t, x, y):
        # [row_i; row_j] <- [[s, t], [x, y]] [row_i; row_j], det(s y - t x) a unit
        R = self.R
        new_i = [
            R.add(R.mul(s, p), R.mul(t, q)) for p, q in zip(self.a[i], self.a[j])
        ]
        new_j = [
            R.add(R.mul(x, p), R.mul(y, q)) for p, q in zip(self.a[i], self.a[j])
        ]
        self.a[i], self.a[j] = new_i, new_j
        new_i = [
            R.add(R.mul(s, p), R.mul(t, q)) for p, q in zip(self.u[i], self.u[j])
        ]
        new_j = [
            R.add(R.mul(x, p), R.mul(y, q)) for p, q in zip(self.u[i], self.u[j])
        ]
        self.u[i], self.u[j] = new_i, new_j

    def col_combine(self, i, j, s, t, x, y):
        # [col_i, col_j] <- [col_i, col_j] [[s, x], [t, y]]
        R = self.R
        for grid in (self.a, self.v):
            for row in grid:
                p, q = row[i], row[j]
                row[i] = R.add(R.mul(s, p), R.mul(t, q))
                row[j] = R.add(R.mul(x, p), R.mul(y, q))

    def matrices(self):
        R = self.R
        return (
            Matrix(R, self.rows, self.rows, self.u),
            Matrix(R, self.rows, self.cols, self.a),
            Matrix(R, self.cols, self.cols, self.v),
        )


def _find_pivot(ws: _Worksheet, t: int):
    """Smallest canonical-associate nonzero entry in the trailing block.

    Ties break by (row, col) lexicographic order, which pins the whole
    reduction down to a deterministic output.
    """
    R = ws.R
    best = None
    for i in range(t, ws.rows):
        row = ws.a[i]
        for j in range(t, ws.cols):
            e = row[j]
            if R.is_zero(e):
                continue
            key = (R.pivot_key(e), i, j)
            if best is None or key < best:
                best = key
    return None if best is None else (best[1], best[2])


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (u, d, v) with u*m*v == d in Smith normal form.

    u and v are square and unimodular; d is diagonal with each diagonal
    entry dividing the next, every entry in canonical associate form,
    and zero entries trailing.
    """
    ws = _Worksheet(m)
    R = ws.R
    t = 0
    limit = min(ws.rows, ws.cols)
    while t < limit:
        piv = _find_pivot(ws, t)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            ws.row_swap(t, pi)
        if pj != t:
            ws.col_swap(t, pj)
        while True:
            # Clear column t below the pivot with row operations.
            for i in range(t + 1, ws.rows):
                e = ws.a[i][t]
                if R.is_zero(e):
                    continue
                q = R.try_div(e, ws.a[t][t])
                if q is not None:
                    ws.row_addmul(i, t, R.neg(q))
                else:
                    g, s, tt = R.gcd_bezout(ws.a[t][t], e)
                    x = R.neg(R.try_div(e, g))
                    y = R.try_div(ws.a[t][t], g)
                    ws.row_combine(t, i, s, tt, x, y)
            # Clear row t right of the pivot with column operations.
            for j in range(t + 1, ws.cols):
                e = ws.a[t][j]
                if R.is_zero(e):
                    continue
                q = R.try_div(e, ws.a[t][t])
                if q is not None:
                    ws.col_addmul(j, t, R.neg(q))
                else:
                    g, s, tt = R.gcd_bezout(ws.a[t][t], e)
                    x = R.neg(R.try_div(e, g))
                    y = R.try_div(ws.a[t][t], g)
                    ws.col_combine(t, j, s, tt, x, y)
            # Column ops can re-dirty the column; loop until both are clean.
            if all(R.is_zero(ws.a[i][t]) for i in range(t + 1, ws.rows)) and all(
                R.is_zero(ws.a[t][j]) for j in range(t + 1, ws.cols)
            ):
                break
        # Enforce the divisibility chain: the pivot must divide every
        # remaining entry; merging an offending row strictly shrinks it.
        offender = None
        for i in range(t + 1, ws.rows):
            for j in range(t + 1, ws.cols):
                if R.try_div(ws.a[i][j], ws.a[t][t]) is None:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            ws.row_addmul(t, offender, R.one())
            continue
        t += 1
    for k in range(limit):
        e = ws.a[k][k]
        if not R.is_zero(e):
            unit = R.canon_unit(e)
            if unit != R.one():
                ws.row_scale(k, unit)
    return ws.matrices()


def smith_diagonal(m: Matrix) -> list:
    """The full diagonal of the Smith form (zeros included)."""
    _, d, _ = smith_normal_form(m)
    return [d[k, k] for k in range(min(m.rows, m.cols))]


def invariant_factors(m: Matrix) -> list:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    R = m.ring
    return [e for e in smith_diagonal(m) if not R.is_zero(e)]


def snf_rank(m: Matrix) -> int:
    return len(invariant_factors(m))


# ---------------------------------------------------------------------------
# Hermite column basis
# ---------------------------------------------------------------------------


def _row_hermite(m: Matrix) -> tuple[list[list], int]:
    """Row-style Hermite form (RREF over fields): unique for the row span.

    Pivots are canonical associates; entries above a pivot are reduced
    to canonical residues (zero over a field); zero rows sink to the
    bottom.  Returns the grid and the rank.
    """
    R = m.ring
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    r = 0
    for j in range(cols):
        if r >= rows:
            break
        # Fold every nonzero entry of column j below r into row r.
        for i in range(r, rows):
            if R.is_zero(a[i][j]):
                continue
            if R.is_zero(a[r][j]):
                a[r], a[i] = a[i], a[r]
                continue
            if i == r:
                continue
            q = R.try_div(a[i][j], a[r][j])
            if q is not None:
                a[i] = [R.sub(x, R.mul(q, y)) for x, y in zip(a[i], a[r])]
            else:
                g, s, t = R.gcd_bezout(a[r][j], a[i][j])
                x = R.neg(R.try_div(a[i][j], g))
                y = R.try_div(a[r][j], g)
                new_r = [R.add(R.mul(s, p), R.mul(t, q2)) for p, q2 in zip(a[r], a[i])]
                new_i = [R.add(R.mul(x, p), R.mul(y, q2)) for p, q2 in zip(a[r], a[i])]
                a[r], a[i] = new_r, new_i
        if R.is_zero(a[r][j]):
            continue
        unit = R.canon_unit(a[r][j])
        if unit != R.one():
            a[r] = [R.mul(unit, x) for x in a[r]]
        for i in range(r):
            q, _ = R.divmod_reduce(a[i][j], a[r][j])
            if not R.is_zero(q):
                a[i] = [R.sub(x, R.mul(q, y)) for x, y in zip(a[i], a[r])]
        r += 1
    return a, r


def hermite_column_basis(m: Matrix) -> Matrix:
    """Canonical basis of the column span of m, one column per basis vector.

    Two matrices have equal column span iff their outputs are entrywise
    equal.  Idempotent; zero matrices yield a 0-column matrix.
    """
    grid, rank = _row_hermite(m.transpose())
    R = m.ring
    basis_rows = grid[:rank]
    return Matrix(R, rank, m.rows, basis_rows).transpose()


# ---------------------------------------------------------------------------
# Kernels, solving, sections
# ---------------------------------------------------------------------------


def kernel_basis(m: Matrix) -> Matrix:
    """Canonical basis of {x : m*x == 0}; free over a PID."""
    _, d, v = smith_normal_form(m)
    R = m.ring
    r = sum(
        1 for k in range(min(m.rows, m.cols)) if not R.is_zero(d[k, k])
    )
    return hermite_column_basis(v.take_columns(range(r, m.cols)))


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """Deterministic x with m*x == b, or None when no solution exists.

    Computed by back-substitution through the Smith form with all free
    coordinates set to zero; b may have several columns, solved jointly.
    """
    if m.rows != b.rows:
        raise DimensionMismatch(
            f"solve: {m.rows} rows on the left, {b.rows} on the right"
        )
    u, d, v = smith_normal_form(m)
    R = m.ring
    c = u @ b
    limit = min(m.rows, m.cols)
    rank = sum(1 for k in range(limit) if not R.is_zero(d[k, k]))
    z = R.zero()
    y = [[z] * b.cols for _ in range(m.cols)]
    for j in range(b.cols):
        for i in range(m.rows):
            ci = c[i, j]
            if i < rank:
                q = R.try_div(ci, d[i, i])
                if q is None:
                    return None
                y[i][j] = q
            elif not R.is_zero(ci):
                return None
    return v @ Matrix(R, m.cols, b.cols, y)


def split_surjection(pi: Matrix) -> Matrix:
    """Section s with pi*s == identity; requires pi surjective.

    Surjectivity over the ring means the Smith form carries a unit in
    every row.
    """
    R = pi.ring
    diag = smith_diagonal(pi)
    if len(diag) < pi.rows or not all(R.is_unit(e) for e in diag[: pi.rows]):
        raise NotSurjective(f"matrix {pi.rows}x{pi.cols} is not surjective")
    s = solve(pi, Matrix.identity(R, pi.rows))
    assert s is not None
    return s


def inverse(m: Matrix) -> Matrix | None:
    """Two-sided inverse, or None when m is not invertible over the ring."""
    if not m.is_square():
        return None
    inv = solve(m, Matrix.identity(m.ring, m.rows))
    if inv is None or not (inv @ m == Matrix.identity(m.ring, m.rows)):
        return None
    return inv


def is_invertible(m: Matrix) -> bool:
    if not m.is_square():
        return False
    R = m.ring
    diag = smith_diagonal(m)
    return len(diag) == m.rows and all(R.is_unit(e) for e in diag)


def is_injective(m: Matrix) -> bool:
    return kernel_basis(m).cols == 0


def is_surjective(m: Matrix) -> bool:
    """Surjective over the ring: a unit in every row of the Smith form."""
    R = m.ring
    diag = smith_diagonal(m)
    return len(diag) >= m.rows and all(R.is_unit(e) for e in diag[: m.rows])


def determinant(m: Matrix):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square():
        raise ShapeMismatch("determinant of a non-square matrix")
    R = m.ring
    n = m.rows
    if n == 0:
        return R.one()
    a = [list(row) for row in m.entries]
    sign = R.one()
    prev = R.one()
    for k in range(n - 1):
        if R.is_zero(a[k][k]):
            swap = next(
                (i for i in range(k + 1, n) if not R.is_zero(a[i][k])), None
            )
            if swap is None:
                return R.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = R.neg(sign)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = R.sub(R.mul(a[k][k], a[i][j]), R.mul(a[i][k], a[k][j]))
                a[i][j] = R.try_div(num, prev)
            a[i][k] = R.zero()
        prev = a[k][k]
    return R.mul(sign, a[n - 1][n - 1])


def in_column_span(basis: Matrix, vectors: Matrix) -> bool:
    """Membership of every column of ``vectors`` in the span of ``basis``."""
    return solve(basis, vectors) is not None


def matrix_from_json(payload: dict) -> Matrix:
    """Parse {"ring": ..., "matrix": {...}} documents."""
    ring = ring_from_descriptor(payload["ring"])
    return Matrix.from_json(ring, payload["matrix"])
