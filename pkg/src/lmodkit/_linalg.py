"""Exact linear algebra over Q (fractions) and Z (Smith normal form).

Matrices are lists of rows; a row is a list of Fraction or int.  Everything
here is dense and small -- the callers work with complexes whose blocks have
at most a few hundred rows, so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = list[Fraction]
Mat = list[Row]


def qmat(rows: Iterable[Iterable]) -> Mat:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Mat:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def shape(a: Mat) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def mat_mul(a: Mat, b: Mat) -> Mat:
    ma, na = shape(a)
    mb, nb = shape(b)
    if na != mb:
        raise ValueError(f"shape mismatch {shape(a)} * {shape(b)}")
    out = zeros(ma, nb)
    for i in range(ma):
        arow = a[i]
        orow = out[i]
        for k in range(na):
            aik = arow[k]
            if aik:
                brow = b[k]
                for j in range(nb):
                    if brow[j]:
                        orow[j] += aik * brow[j]
    return out


def mat_add(a: Mat, b: Mat, sign: int = 1) -> Mat:
    ma, na = shape(a)
    if shape(b) != (ma, na):
        raise ValueError("shape mismatch in add")
    return [[a[i][j] + sign * b[i][j] for j in range(na)] for i in range(ma)]


def mat_scale(a: Mat, c) -> Mat:
    c = Fraction(c)
    return [[x * c for x in row] for row in a]


def transpose(a: Mat) -> Mat:
    m, n = shape(a)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def is_zero(a: Mat) -> bool:
    return all(not x for row in a for x in row)


def mat_eq(a: Mat, b: Mat) -> bool:
    return shape(a) == shape(b) and all(
        a[i][j] == b[i][j] for i in range(len(a)) for j in range(len(a[0]) if a else 0)
    )


def block_diag(blocks: Sequence[Mat]) -> Mat:
    rows = sum(shape(b)[0] for b in blocks)
    cols = sum(shape(b)[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        mb, nb = shape(b)
        for i in range(mb):
            for j in range(nb):
                out[r + i][c + j] = Fraction(b[i][j])
        r += mb
        c += nb
    return out


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (R, pivot_columns)."""
    m, n = shape(a)
    r = [row[:] for row in a]
    pivots: list[int] = []
    pr = 0
    for pc in range(n):
        pivot = None
        for i in range(pr, m):
            if r[i][pc]:
                pivot = i
                break
        if pivot is None:
            continue
        r[pr], r[pivot] = r[pivot], r[pr]
        inv = Fraction(1) / r[pr][pc]
        r[pr] = [x * inv for x in r[pr]]
        for i in range(m):
            if i != pr and r[i][pc]:
                f = r[i][pc]
                r[i] = [x - f * y for x, y in zip(r[i], r[pr])]
        pivots.append(pc)
        pr += 1
        if pr == m:
            break
    return r, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def nullspace(a: Mat) -> Mat:
    """Basis of the right kernel, as columns collected into a matrix (n x k)."""
    m, n = shape(a)
    if n == 0:
        return []
    r, pivots = rref(a)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return transpose(basis) if basis else [[] for _ in range(n)]


def solve(a: Mat, b: Mat) -> Mat | None:
    """A solution X of A X = B, or None if inconsistent."""
    m, n = shape(a)
    mb, nb = shape(b)
    if m != mb:
        raise ValueError("shape mismatch in solve")
    aug = [a[i] + b[i] for i in range(m)] if m else []
    r, pivots = rref(aug)
    if any(p >= n for p in pivots):
        return None
    x = zeros(n, nb)
    for i, p in enumerate(pivots):
        for j in range(nb):
            x[p][j] = r[i][n + j]
    return x


def column_space_projector_complement(a: Mat) -> Mat:
    """Columns extending col(A) to the full space: a basis of a complement."""
    m, n = shape(a)
    cols = transpose(a) if n else []
    chosen: list[Row] = []
    cur_rank = 0
    for c in cols:
        trial = chosen + [c]
        if len(rref(trial)[1]) > cur_rank:
            chosen = trial
            cur_rank += 1
    comp = []
    for j in range(m):
        e = [Fraction(0)] * m
        e[j] = Fraction(1)
        trial = chosen + comp + [e]
        if len(rref(trial)[1]) > cur_rank + len(comp):
            comp.append(e)
    return transpose(comp) if comp else [[] for _ in range(m)]


# ---------------------------------------------------------------------------
# Integer matrices: Smith normal form and friends.


ZMat = list[list[int]]


def zmat(rows: Iterable[Iterable]) -> ZMat:
    out = []
    for row in rows:
        r = []
        for x in row:
            xi = int(x)
            if xi != x:
                raise ValueError("non-integer entry in integer matrix")
            r.append(xi)
        out.append(r)
    return out


def smith_normal_form(a: ZMat) -> tuple[ZMat, ZMat, ZMat]:
    """Return (S, U, V) with S = U A V in Smith normal form; U, V unimodular."""
    m = len(a)
    n = len(a[0]) if a else 0
    s = [row[:] for row in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, k, q):  # row i -= q * row k
        s[i] = [x - q * y for x, y in zip(s[i], s[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_op(j, k, q):  # col j -= q * col k
        for row in s:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in s:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] and (best is None or abs(s[i][j]) < best):
                    best = abs(s[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        again = True
        while again:
            again = False
            for i in range(t + 1, m):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t]:
                        swap_rows(t, i)
                        again = True
            for j in range(t + 1, n):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j]:
                        swap_cols(t, j)
                        again = True
        # divisibility sweep
        entry = s[t][t]
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if s[i][j] % entry:
                    s[t] = [x + y for x, y in zip(s[t], s[i])]
                    u[t] = [x + y for x, y in zip(u[t], u[i])]
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if s[t][t] < 0:
                s[t] = [-x for x in s[t]]
                u[t] = [-x for x in u[t]]
            t += 1
            if t == min(m, n):
                break
    return s, u, v


def z_rank(a: ZMat) -> int:
    s, _, _ = smith_normal_form(a)
    return sum(1 for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i])


def z_kernel(a: ZMat) -> ZMat:
    """Basis of the integer kernel as columns of an n x k matrix (saturated)."""
    m = len(a)
    n = len(a[0]) if a else 0
    if m == 0:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    s, _, v = smith_normal_form(a)
    r = sum(1 for i in range(min(m, n)) if s[i][i])
    # kernel = span of columns r..n-1 of V
    return [[v[i][j] for j in range(r, n)] for i in range(n)]


def z_cohomology(d_in: ZMat, d_out: ZMat, dim: int) -> tuple[int, list[int]]:
    """Homology at the middle of  Z^a --d_in--> Z^dim --d_out--> Z^b.

    Returns (free_rank, invariant_factors > 1).  d_in has `dim` rows, d_out
    has `dim` columns; either may be empty (zero map).
    """
    if dim == 0:
        return 0, []
    if d_out and any(len(r) != dim for r in d_out):
        raise ValueError("d_out column count mismatch")
    ker = z_kernel(d_out) if d_out else [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    k = len(ker[0]) if ker else 0
    if k == 0:
        return 0, []
    if not d_in or not d_in[0]:
        return k, []
    # express image of d_in in kernel coordinates: solve ker * X = d_in over Q,
    # entries must be integers since im(d_in) lies in the saturated kernel.
    x = solve(qmat(ker), qmat(d_in))
    if x is None:
        raise ArithmeticError("image does not lie in kernel: not a complex")
    xi = zmat(x)
    s, _, _ = smith_normal_form(xi)
    r = 0
    tors = []
    for i in range(min(len(s), len(s[0]) if s else 0)):
        e = s[i][i]
        if e == 0:
            break
        r += 1
        if e > 1:
            tors.append(e)
    return k - r, sorted(tors)
