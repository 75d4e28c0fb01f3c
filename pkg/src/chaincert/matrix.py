"""Dense exact matrices over the supported rings, and the decision
procedures built on them: Smith/Hermite normal forms over Z, linear system
solving over every supported ring, kernel bases, and cokernel invariants.

Convention: a map between free right modules R^a -> R^b is a b x a matrix
acting on coordinate columns by left multiplication, so a composition g.f
is the product G*F. A map out of a direct sum A (+) B is the horizontal
block [F | G]; a direct sum of maps is the diagonal block.

Matrices with zero rows or columns are first-class citizens; they carry
maps to and from the zero module.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .rings import GroupRing, IntegerRing, PrimeField, Ring, RingError


class ShapeError(ValueError):
    """Matrix dimensions do not fit the requested operation."""


class Matrix:
    __slots__ = ("ring", "rows", "cols", "_e")

    def __init__(self, ring: Ring, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimensions")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(entries)}"
            )
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self._e = entries

    @classmethod
    def from_rows(cls, ring: Ring, rows_nested, cols: int | None = None) -> "Matrix":
        rows_nested = [list(r) for r in rows_nested]
        nrows = len(rows_nested)
        if nrows == 0:
            if cols is None:
                raise ShapeError("cols is required for a matrix with no rows")
            return cls(ring, 0, cols, ())
        ncols = len(rows_nested[0])
        if cols is not None and cols != ncols:
            raise ShapeError("cols disagrees with row length")
        if any(len(r) != ncols for r in rows_nested):
            raise ShapeError("ragged rows")
        return cls(ring, nrows, ncols, [x for r in rows_nested for x in r])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        one, zero = ring.one, ring.zero
        return cls(ring, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    def entry(self, i: int, j: int):
        return self._e[i * self.cols + j]

    def row_list(self, i: int) -> list:
        return list(self._e[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row_list(i) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for x in self._e)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self._e == other._e
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self._e))

    def _check_same_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Matrix(
            self.ring, self.rows, self.cols,
            [add(x, y) for x, y in zip(self._e, other._e)],
        )

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, self.rows, self.cols, [neg(x) for x in self._e])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_same_ring(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return _mat_mul(self, other)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.ring, self.cols, self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def __repr__(self):
        body = "; ".join(
            " ".join(self.ring.render(x) for x in self.row_list(i))
            for i in range(self.rows)
        )
        return f"Matrix({self.ring}, {self.rows}x{self.cols}, [{body}])"


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ring = a.ring
    m, n, k = a.rows, a.cols, b.cols
    if isinstance(ring, IntegerRing):
        flat = _kernels.matmul_int(list(a._e), list(b._e), m, n, k)
        return Matrix(ring, m, k, flat)
    if isinstance(ring, PrimeField):
        flat = _kernels.matmul_mod(list(a._e), list(b._e), m, n, k, ring.p)
        return Matrix(ring, m, k, flat)
    if isinstance(ring, GroupRing):
        prod = restrict_scalars(a) * _expand_columns(b)
        return _fold_columns(prod, ring, m)
    raise RingError(f"unsupported ring {ring}")


def hstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ShapeError("hstack needs at least one matrix")
    rows = mats[0].rows
    ring = mats[0].ring
    for mat in mats[1:]:
        if mat.rows != rows:
            raise ShapeError("hstack row mismatch")
        if mat.ring != ring:
            raise RingError("hstack ring mismatch")
    out_rows = []
    for i in range(rows):
        row: list = []
        for mat in mats:
            row.extend(mat.row_list(i))
        out_rows.append(row)
    return Matrix.from_rows(ring, out_rows, cols=sum(m.cols for m in mats))


def vstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ShapeError("vstack needs at least one matrix")
    cols = mats[0].cols
    ring = mats[0].ring
    entries: list = []
    rows = 0
    for mat in mats:
        if mat.cols != cols:
            raise ShapeError("vstack column mismatch")
        if mat.ring != ring:
            raise RingError("vstack ring mismatch")
        entries.extend(mat._e)
        rows += mat.rows
    return Matrix(ring, rows, cols, entries)


def block(grid) -> Matrix:
    """Assemble a 2D arrangement of matrices with consistent edge sizes."""
    grid = [list(row) for row in grid]
    if not grid or not grid[0]:
        raise ShapeError("block needs a nonempty grid")
    return vstack(*[hstack(*row) for row in grid])


# ---------------------------------------------------------------------------
# restriction of scalars for group rings


def restrict_scalars(a: Matrix) -> Matrix:
    """Replace every group-ring entry by its left-multiplication block over
    the base ring; the result is the same additive map with ranks multiplied
    by the group order."""
    ring = a.ring
    if not isinstance(ring, GroupRing):
        raise RingError("restrict_scalars needs a group-ring matrix")
    n = ring.group.order
    base = ring.base
    out = [[base.zero] * (a.cols * n) for _ in range(a.rows * n)]
    for i in range(a.rows):
        for j in range(a.cols):
            rep = ring.regular_representation(a.entry(i, j))
            for bi in range(n):
                orow = out[i * n + bi]
                rrow = rep[bi]
                for bj in range(n):
                    orow[j * n + bj] = rrow[bj]
    return Matrix.from_rows(base, out, cols=a.cols * n)


def _expand_columns(b: Matrix) -> Matrix:
    """Unfold each group-ring coordinate into its coefficient vector,
    turning an m x k group-ring matrix into an (m|G|) x k base matrix."""
    ring = b.ring
    n = ring.group.order
    base = ring.base
    out = [[base.zero] * b.cols for _ in range(b.rows * n)]
    for i in range(b.rows):
        for j in range(b.cols):
            for g, c in enumerate(b.entry(i, j)):
                out[i * n + g][j] = c
    return Matrix.from_rows(base, out, cols=b.cols)


def _fold_columns(y: Matrix, ring: GroupRing, rows: int) -> Matrix:
    n = ring.group.order
    if y.rows != rows * n:
        raise ShapeError("folded row count mismatch")
    entries = []
    for i in range(rows):
        for j in range(y.cols):
            entries.append(tuple(y.entry(i * n + g, j) for g in range(n)))
    return Matrix(ring, rows, y.cols, entries)


# ---------------------------------------------------------------------------
# integer normal forms


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class HermiteNormalForm:
    h: Matrix
    u: Matrix  # unimodular, u * a = h


@dataclass(frozen=True)
class SmithNormalForm:
    d: Matrix
    u: Matrix  # unimodular, u * a * v = d
    v: Matrix

    def diagonal(self) -> list[int]:
        k = min(self.d.rows, self.d.cols)
        return [self.d.entry(i, i) for i in range(k)]


def _require_int_ring(a: Matrix, what: str):
    if not isinstance(a.ring, IntegerRing):
        raise RingError(f"{what} is defined over Z only")


def _combine_rows(mats, i1, i2, c):
    """Row operations on every matrix in mats so that the first matrix gets
    gcd at (i1, c) and zero at (i2, c)."""
    d = mats[0]
    a, b = d[i1][c], d[i2][c]
    if b == 0:
        return
    if a == 0:
        for m in mats:
            m[i1], m[i2] = m[i2], m[i1]
        return
    if b % a == 0:
        q = b // a
        for m in mats:
            m[i2] = [x - q * y for x, y in zip(m[i2], m[i1])]
        return
    x, y, g = _xgcd(a, b)
    ag, mbg = a // g, -(b // g)
    for m in mats:
        r1, r2 = m[i1], m[i2]
        m[i1] = [x * p + y * q for p, q in zip(r1, r2)]
        m[i2] = [mbg * p + ag * q for p, q in zip(r1, r2)]


def hnf(a: Matrix) -> HermiteNormalForm:
    """Row Hermite normal form over Z: u*a = h with u unimodular, pivots
    positive, entries above each pivot reduced into [0, pivot)."""
    _require_int_ring(a, "hnf")
    m, n = a.rows, a.cols
    h = a.to_rows()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        if all(h[i][c] == 0 for i in range(r, m)):
            continue
        for i in range(r + 1, m):
            _combine_rows((h, u), r, i, c)
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return HermiteNormalForm(
        h=Matrix.from_rows(a.ring, h, cols=n),
        u=Matrix.from_rows(a.ring, u, cols=m),
    )


def _column_echelon(a: Matrix) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Column echelon form over Z via the transposed Hermite form.

    Returns (e, v, pivot_rows) with a*V = E as nested-row lists; column j of
    E for j < len(pivot_rows) has its leading nonzero entry at row
    pivot_rows[j] (strictly increasing); the remaining columns are zero.
    """
    res = hnf(a.transpose())
    e = res.h.transpose()
    v = res.u.transpose()
    pivot_rows = []
    for j in range(e.cols):
        lead = next((i for i in range(e.rows) if e.entry(i, j) != 0), None)
        if lead is None:
            break
        pivot_rows.append(lead)
    return e.to_rows(), v.to_rows(), pivot_rows


def snf(a: Matrix) -> SmithNormalForm:
    """Smith normal form over Z: u*a*v = d with d diagonal, nonnegative,
    each entry dividing the next, zeros trailing.

    Pivoting picks the smallest nonzero entry in the remaining block, which
    keeps coefficient growth tame at desk scale.
    """
    _require_int_ring(a, "snf")
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_combine(j1, j2, i):
        """Column ops putting gcd at (i, j1), zero at (i, j2)."""
        p, q = d[i][j1], d[i][j2]
        if q == 0:
            return
        if p == 0:
            for row in d:
                row[j1], row[j2] = row[j2], row[j1]
            for row in v:
                row[j1], row[j2] = row[j2], row[j1]
            return
        if q % p == 0:
            f = q // p
            for row in d:
                row[j2] -= f * row[j1]
            for row in v:
                row[j2] -= f * row[j1]
            return
        x, y, g = _xgcd(p, q)
        pg, mqg = p // g, -(q // g)
        for row in d:
            r1, r2 = row[j1], row[j2]
            row[j1] = x * r1 + y * r2
            row[j2] = mqg * r1 + pg * r2
        for row in v:
            r1, r2 = row[j1], row[j2]
            row[j1] = x * r1 + y * r2
            row[j2] = mqg * r1 + pg * r2

    def swap_into(k):
        """Move a smallest-magnitude nonzero of d[k:, k:] to (k, k)."""
        best = None
        for i in range(k, m):
            for j in range(k, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            return False
        _, i, j = best
        if i != k:
            d[k], d[i] = d[i], d[k]
            u[k], u[i] = u[i], u[k]
        if j != k:
            for row in d:
                row[k], row[j] = row[j], row[k]
            for row in v:
                row[k], row[j] = row[j], row[k]
        return True

    rank = 0
    for k in range(min(m, n)):
        if not swap_into(k):
            break
        while True:
            for i in range(k + 1, m):
                _combine_rows((d, u), k, i, k)
            if all(d[k][j] == 0 for j in range(k + 1, n)):
                break
            for j in range(k + 1, n):
                col_combine(k, j, k)
            if all(d[i][k] == 0 for i in range(k + 1, m)):
                break
        rank = k + 1

    # enforce the divisibility chain with block-local fixes: pull the next
    # diagonal entry alongside, then one column and one row combination
    # leave (gcd, +-lcm) on the diagonal
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if d[i + 1][i + 1] % d[i][i] == 0:
                continue
            changed = True
            d[i] = [x + y for x, y in zip(d[i], d[i + 1])]
            u[i] = [x + y for x, y in zip(u[i], u[i + 1])]
            col_combine(i, i + 1, i)
            _combine_rows((d, u), i, i + 1, i)

    for i in range(rank):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]

    return SmithNormalForm(
        d=Matrix.from_rows(a.ring, d, cols=n),
        u=Matrix.from_rows(a.ring, u, cols=m),
        v=Matrix.from_rows(a.ring, v, cols=n),
    )


# ---------------------------------------------------------------------------
# solving, kernels, cokernels


def _solve_int(a: Matrix, b: Matrix) -> Matrix | None:
    e, v, pivot_rows = _column_echelon(a)
    n = a.cols
    rank = len(pivot_rows)
    cols_out = []
    for col in range(b.cols):
        resid = [b.entry(i, col) for i in range(b.rows)]
        y = [0] * n
        for j in range(rank):
            r = pivot_rows[j]
            lead = e[r][j]
            if resid[r] % lead:
                return None
            q = resid[r] // lead
            if q:
                y[j] = q
                for i in range(r, len(resid)):
                    resid[i] -= q * e[i][j]
        if any(resid):
            return None
        cols_out.append([sum(v[i][j] * y[j] for j in range(n)) for i in range(n)])
    entries = [cols_out[j][i] for i in range(n) for j in range(b.cols)]
    return Matrix(a.ring, n, b.cols, entries)


def _solve_field(a: Matrix, b: Matrix) -> Matrix | None:
    p = a.ring.p
    aug = hstack(a, b)
    flat, pivots = _kernels.rref_mod(list(aug._e), aug.rows, aug.cols, p)
    n = a.cols
    if any(c >= n for c in pivots):
        return None
    x = [[0] * b.cols for _ in range(n)]
    for r, c in enumerate(pivots):
        for j in range(b.cols):
            x[c][j] = flat[r * aug.cols + n + j]
    return Matrix.from_rows(a.ring, x, cols=b.cols)


def _solve_group_ring(a: Matrix, b: Matrix) -> Matrix | None:
    base_a = restrict_scalars(a)
    base_b = _expand_columns(b)
    y = solve(base_a, base_b)
    if y is None:
        return None
    return _fold_columns(y, a.ring, a.cols)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """One exact solution X of A*X = B, or None when none exists.

    Over a prime field this is Gaussian elimination; over Z, a column
    Hermite form (solvable iff B lies in the column lattice of A); over a
    group ring the system is rewritten through the regular representation
    into a base-ring system and folded back.
    """
    if a.ring != b.ring:
        raise RingError("solve: ring mismatch")
    if a.rows != b.rows:
        raise ShapeError("solve: row mismatch")
    ring = a.ring
    if isinstance(ring, IntegerRing):
        return _solve_int(a, b)
    if isinstance(ring, PrimeField):
        return _solve_field(a, b)
    if isinstance(ring, GroupRing):
        return _solve_group_ring(a, b)
    raise RingError(f"unsupported ring {ring}")


def kernel_basis(a: Matrix) -> Matrix:
    """Basis of {x : A*x = 0} as matrix columns; over Z this is a lattice
    basis (the kernel of an integer matrix is free)."""
    ring = a.ring
    if isinstance(ring, IntegerRing):
        e, v, pivot_rows = _column_echelon(a)
        rank = len(pivot_rows)
        cols = [[v[i][j] for i in range(a.cols)] for j in range(rank, a.cols)]
    elif isinstance(ring, PrimeField):
        p = ring.p
        flat, pivots = _kernels.rref_mod(list(a._e), a.rows, a.cols, p)
        pivot_set = set(pivots)
        free = [j for j in range(a.cols) if j not in pivot_set]
        cols = []
        for j in free:
            vec = [0] * a.cols
            vec[j] = 1
            for r, c in enumerate(pivots):
                vec[c] = (-flat[r * a.cols + j]) % p
            cols.append(vec)
    else:
        raise RingError("kernel_basis is defined over Z and prime fields only")
    entries = [col[i] for i in range(a.cols) for col in cols]
    return Matrix(ring, a.cols, len(cols), entries)


@dataclass(frozen=True)
class Invariants:
    """Isomorphism invariants of a finitely generated module: free rank
    (dimension, over a field) plus invariant factors > 1 (over Z)."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def rank_field(a: Matrix) -> int:
    if not isinstance(a.ring, PrimeField):
        raise RingError("rank_field needs a prime-field matrix")
    _, pivots = _kernels.rref_mod(list(a._e), a.rows, a.cols, a.ring.p)
    return len(pivots)


def cokernel_invariants(a: Matrix) -> Invariants:
    """Invariants of coker(A) = R^rows / im(A). Over Z: free rank and
    invariant factors from the Smith form; over a field: dimension.
    Group-ring callers restrict scalars first."""
    ring = a.ring
    if isinstance(ring, IntegerRing):
        diag = snf(a).diagonal()
        nonzero = [d for d in diag if d != 0]
        return Invariants(
            free_rank=a.rows - len(nonzero),
            torsion=tuple(d for d in nonzero if d > 1),
        )
    if isinstance(ring, PrimeField):
        return Invariants(free_rank=a.rows - rank_field(a))
    raise RingError("cokernel_invariants over Z and prime fields; restrict scalars first")
