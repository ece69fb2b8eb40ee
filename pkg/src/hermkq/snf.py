"""Integer Smith normal form with unimodular transforms, plus lattice solvers.

Small dense matrices only; everything is exact Python-int arithmetic.
"""

from __future__ import annotations


def smith_normal_form(mat):
    """Return (D, U, V) with U*mat*V = D, U and V unimodular, D in Smith form."""
    a = [list(map(int, row)) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < m and t < n:
        # locate a nonzero pivot of minimal absolute value
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] % a[t][t] != 0:
                dirty = True
            row_op(i, t, a[i][t] // a[t][t])
        for j in range(t + 1, n):
            if a[t][j] % a[t][t] != 0:
                dirty = True
            col_op(j, t, a[t][j] // a[t][t])
        if dirty or any(a[i][t] for i in range(t + 1, m)) or any(
            a[t][j] for j in range(t + 1, n)
        ):
            continue
        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # add offending row to pivot row
            continue
        t += 1
    return a, u, v


def invariant_factors(mat):
    """Nontrivial invariant factors (d > 1) and the free rank of coker."""
    d, _, _ = smith_normal_form(mat)
    m = len(d)
    n = len(d[0]) if m else 0
    diag = [d[i][i] for i in range(min(m, n))]
    factors = [x for x in diag if x > 1]
    rank = sum(1 for x in diag if x != 0)
    free = n - rank
    return factors, free


def _mat_vec(mat, vec):
    return [sum(r * x for r, x in zip(row, vec)) for row in mat]


def solve_integer(mat, target):
    """One integer solution x of mat*x = target, or None; also a kernel basis."""
    d, u, v = smith_normal_form(mat)
    m = len(mat)
    n = len(mat[0]) if m else 0
    b = _mat_vec(u, list(target))
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if b[i] != 0:
                return None, []
        else:
            if b[i] % di != 0:
                return None, []
            y[i] = b[i] // di
    for i in range(m, len(b)):
        if b[i] != 0:
            return None, []
    x = _mat_vec(v, y)
    kernel = []
    for j in range(n):
        dj = d[j][j] if j < m else 0
        if j >= m or dj == 0:
            kernel.append([v[i][j] for i in range(n)])
    return x, kernel


def solve_mod(mat, target, modulus):
    """Solutions of mat*x = target (mod modulus): (particular, kernel gens mod modulus)."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    aug = [list(mat[i]) + [modulus if j == i else 0 for j in range(m)] for i in range(m)]
    x, kernel = solve_integer(aug, target)
    if x is None:
        return None, []
    part = [xi % modulus for xi in x[:n]]
    gens = []
    for k in kernel:
        g = [ki % modulus for ki in k[:n]]
        if any(g):
            gens.append(g)
    # reductions of the trivial modulus shifts e_i * modulus are already 0 mod modulus
    return part, gens
