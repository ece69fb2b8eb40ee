"""Exact rectangular matrices over a ring with involution."""

from __future__ import annotations

from itertools import product

from .caps import CapExceeded, check_cap
from .rings import Ring


class Mat:
    """Immutable row-major matrix over a Ring."""

    __slots__ = ("ring", "rows", "cols", "entries", "_hash")

    def __init__(self, ring: Ring, entries):
        self.ring = ring
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")
        self._hash = None

    @staticmethod
    def zero(ring: Ring, rows: int, cols: int | None = None) -> "Mat":
        cols = rows if cols is None else cols
        z = ring.zero
        return Mat(ring, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(ring: Ring, n: int) -> "Mat":
        z, o = ring.zero, ring.one
        return Mat(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def scalar(ring: Ring, n: int, value) -> "Mat":
        z = ring.zero
        return Mat(ring, [[value if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_strs(ring: Ring, rows) -> "Mat":
        return Mat(ring, [[ring.from_str(s) for s in row] for row in rows])

    def to_strs(self):
        return [[self.ring.to_str(x) for x in row] for row in self.entries]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __add__(self, other: "Mat") -> "Mat":
        add = self.ring.add
        return Mat(
            self.ring,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        sub = self.ring.sub
        return Mat(
            self.ring,
            [
                [sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self) -> "Mat":
        neg = self.ring.neg
        return Mat(self.ring, [[neg(a) for a in row] for row in self.entries])

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        R = self.ring
        add, mul, zero = R.add, R.mul, R.zero
        bcols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            orow = []
            for col in bcols:
                acc = zero
                for a, b in zip(row, col):
                    if a != zero and b != zero:
                        acc = add(acc, mul(a, b))
                orow.append(acc)
            out.append(orow)
        return Mat(R, out)

    def scale_left(self, c) -> "Mat":
        mul = self.ring.mul
        return Mat(self.ring, [[mul(c, a) for a in row] for row in self.entries])

    def scale_right(self, c) -> "Mat":
        mul = self.ring.mul
        return Mat(self.ring, [[mul(a, c) for a in row] for row in self.entries])

    def scale_sign(self, eps: int) -> "Mat":
        if eps == 1:
            return self
        if eps == -1:
            return -self
        raise ValueError("sign must be +1 or -1")

    def transpose(self) -> "Mat":
        return Mat(self.ring, list(zip(*self.entries)))

    def conj_entries(self) -> "Mat":
        conj = self.ring.conj
        return Mat(self.ring, [[conj(a) for a in row] for row in self.entries])

    def star(self) -> "Mat":
        """Conjugate transpose; realizes the dual of a map once A^n = (A^n)*."""
        conj = self.ring.conj
        return Mat(self.ring, [[conj(a) for a in col] for col in zip(*self.entries)])

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(a == z for row in self.entries for a in row)

    def key(self) -> str:
        return repr(self.to_strs())

    def submatrix(self, r0, r1, c0, c1) -> "Mat":
        return Mat(self.ring, [row[c0:c1] for row in self.entries[r0:r1]])

    def map_entries(self, fn, ring: Ring | None = None) -> "Mat":
        return Mat(ring or self.ring, [[fn(a) for a in row] for row in self.entries])

    def __repr__(self):
        return f"Mat({self.key()})"


def conj_transpose(m: Mat) -> Mat:
    return m.star()


def block(ring: Ring, grid) -> Mat:
    """Assemble a block matrix from a grid of Mats."""
    rows = []
    for brow in grid:
        height = brow[0].rows
        if any(b.rows != height for b in brow):
            raise ValueError("block heights differ")
        for i in range(height):
            row = []
            for b in brow:
                row.extend(b.entries[i])
            rows.append(row)
    return Mat(ring, rows)


def diag_block(ring: Ring, mats) -> Mat:
    total_r = sum(m.rows for m in mats)
    total_c = sum(m.cols for m in mats)
    out = [[ring.zero] * total_c for _ in range(total_r)]
    r = c = 0
    for m in mats:
        for i in range(m.rows):
            out[r + i][c: c + m.cols] = list(m.entries[i])
        r += m.rows
        c += m.cols
    return Mat(ring, out)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; the ring must be commutative for this to be a tensor."""
    R = a.ring
    if not R.is_commutative:
        raise ValueError("kron needs a commutative ring")
    mul = R.mul
    out = []
    for arow in a.entries:
        for brow in b.entries:
            out.append([mul(x, y) for x in arow for y in brow])
    return Mat(R, out)


def _field_inverse(m: Mat) -> Mat | None:
    R = m.ring
    n = m.rows
    a = [list(row) for row in m.entries]
    inv = [list(row) for row in Mat.identity(R, n).entries]
    zero = R.zero
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if a[r][col] != zero:
                pivot = r
                break
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        pinv = R.inv(a[col][col])
        if pinv is None:
            return None
        a[col] = [R.mul(pinv, x) for x in a[col]]
        inv[col] = [R.mul(pinv, x) for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != zero:
                f = a[r][col]
                a[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[r], a[col])]
                inv[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(inv[r], inv[col])]
    return Mat(R, inv)


def _det_comm(m: Mat):
    """Determinant over a commutative ring by memoized Laplace expansion."""
    R = m.ring
    n = m.rows
    memo = {}

    def minor(rows_mask: int, col: int):
        if (rows_mask, col) in memo:
            return memo[(rows_mask, col)]
        rows = [i for i in range(n) if rows_mask & (1 << i)]
        if not rows:
            return R.one
        acc = R.zero
        sign = 1
        for pos, i in enumerate(rows):
            e = m.entries[i][col]
            if e != R.zero:
                term = R.mul(e, minor(rows_mask & ~(1 << i), col + 1))
                acc = R.add(acc, term if sign > 0 else R.neg(term))
            sign = -sign
        memo[(rows_mask, col)] = acc
        return acc

    return minor((1 << n) - 1, 0)


def _adjugate_inverse(m: Mat) -> Mat | None:
    """Inverse over a commutative ring: adj(m) * det(m)^{-1}."""
    R = m.ring
    n = m.rows
    det = _det_comm(m)
    dinv = R.inv(det)
    if dinv is None:
        return None
    rows = list(range(n))
    out = [[R.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = Mat(
                R,
                [
                    [m.entries[r][c] for c in rows if c != j]
                    for r in rows
                    if r != i
                ],
            ) if n > 1 else None
            cof = _det_comm(sub) if n > 1 else R.one
            if (i + j) % 2:
                cof = R.neg(cof)
            out[j][i] = R.mul(cof, dinv)
    inv = Mat(R, out)
    ident = Mat.identity(R, n)
    if m * inv != ident or inv * m != ident:
        raise AssertionError("adjugate inverse failed verification")
    return inv


def invert(m: Mat, cap: int | None = None) -> Mat | None:
    """Two-sided inverse of m, or None.

    Fields use Gauss-Jordan; other commutative rings the adjugate (the
    matrix is invertible iff its determinant is a unit); noncommutative
    rings solve the additive system m*X = 1 exactly and confirm X*m = 1.
    """
    if not m.is_square():
        raise ValueError("only square matrices can be inverted")
    if m.rows == 0:
        return m
    R = m.ring
    if R.is_field:
        return _field_inverse(m)
    if R.is_commutative:
        return _adjugate_inverse(m)
    from .additive import solve_affine  # local import to avoid a cycle

    ident = Mat.identity(R, m.rows)
    sols = solve_affine(R, (m.rows, m.rows), lambda x: m * x, ident, cap=cap)
    for x in sols:
        if x * m == ident:
            return x
    return None


def is_invertible_by_enumeration(m: Mat, cap: int | None = None) -> bool:
    """Bijectivity of x -> m*x on A^n by full enumeration (independent oracle)."""
    R = m.ring
    if R.size is None:
        raise CapExceeded("ring not enumerable")
    check_cap(R.size**m.rows, "bijectivity enumeration", cap)
    seen = set()
    for vec in product(R.elements(), repeat=m.rows):
        col = Mat(R, [[v] for v in vec])
        image = m * col
        if image.entries in seen:
            return False
        seen.add(image.entries)
    return len(seen) == R.size**m.rows


def nilpotency_index(m: Mat) -> int | None:
    """Least k with m^k = 0, or None (search capped at rows*cols)."""
    if not m.is_square():
        raise ValueError("nilpotency needs a square matrix")
    power = Mat.identity(m.ring, m.rows)
    for k in range(1, m.rows * m.cols + 1):
        power = power * m
        if power.is_zero():
            return k
    return None


def rank_over_field(m: Mat) -> int:
    """Row rank by Gaussian elimination; the ring must be a field."""
    R = m.ring
    if not R.is_field:
        raise ValueError("rank needs a field")
    a = [list(row) for row in m.entries]
    zero = R.zero
    rank = 0
    col = 0
    while rank < m.rows and col < m.cols:
        pivot = None
        for r in range(rank, m.rows):
            if a[r][col] != zero:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pinv = R.inv(a[rank][col])
        a[rank] = [R.mul(pinv, x) for x in a[rank]]
        for r in range(m.rows):
            if r != rank and a[r][col] != zero:
                f = a[r][col]
                a[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[r], a[rank])]
        rank += 1
        col += 1
    return rank


def all_matrices(ring: Ring, rows: int, cols: int, cap: int | None = None):
    """Deterministic stream of every rows x cols matrix over a finite ring."""
    if ring.size is None:
        raise CapExceeded("ring not enumerable")
    check_cap(ring.size ** (rows * cols), "matrix enumeration", cap)
    elems = ring.elements()
    for flat in product(elems, repeat=rows * cols):
        yield Mat(ring, [flat[i * cols: (i + 1) * cols] for i in range(rows)])


def solve_linear(ring, shape, fun, target=None, all_solutions=True, cap=None):
    """All matrices X of the given shape with fun(X) = target.

    fun must be additive up to a constant (an affine matrix expression such
    as A*X*B + C*X.star()*D + E); target defaults to zero.  Fields and
    prime-characteristic rings are solved by linearization; other finite
    rings fall back to capped brute force.  The result is sorted, hence
    deterministic.
    """
    from .additive import solve_affine

    rows, cols = shape
    if target is None:
        target = Mat.zero(ring, 1, 1)
        probe = fun(Mat.zero(ring, rows, cols))
        target = Mat.zero(ring, probe.rows, probe.cols)
    return solve_affine(ring, shape, fun, target, all_solutions=all_solutions, cap=cap)
