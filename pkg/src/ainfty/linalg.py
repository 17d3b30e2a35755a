"""Exact Gaussian elimination over the rationals.

Matrices are lists of rows of Fractions.  Everything here is small and dense;
sparsity is handled one level up.
"""

from dataclasses import dataclass
from fractions import Fraction


def as_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(mat, ncols=None):
    m = len(mat)
    n = len(mat[0]) if m else (ncols or 0)
    return m, n


def matmul(a, b, inner=None, ncols=None):
    """a @ b.  ``inner`` supplies the shared dimension when a has no rows,
    ``ncols`` the column count when b has none."""
    m = len(a)
    k = len(a[0]) if m else (inner if inner is not None else len(b))
    n = len(b[0]) if b else (ncols or 0)
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(n):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def transpose(a, ncols=None):
    m, n = shape(a, ncols)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def is_zero(mat):
    return all(not x for row in mat for x in row)


def rref(mat, ncols=None):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    r = as_matrix(mat)
    m, n = shape(r, ncols)
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((i for i in range(row, m) if r[i][col]), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        p = r[row][col]
        if p != 1:
            r[row] = [x / p for x in r[row]]
        for i in range(m):
            if i != row and r[i][col]:
                f = r[i][col]
                ri, rr = r[i], r[row]
                r[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(mat, ncols=None):
    return len(rref(mat, ncols)[1])


def nullspace(mat, ncols=None):
    """Basis of {x : mat x = 0}, one vector per free column (canonical order)."""
    m, n = shape(mat, ncols)
    r, pivots = rref(mat, n)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def column_space(mat, ncols=None):
    """Pivot columns of ``mat`` (a basis of its image)."""
    m, n = shape(mat, ncols)
    _, pivots = rref(mat, n)
    return [[mat[i][j] for i in range(m)] for j in pivots]


def complement_indices(vectors, n):
    """Standard basis indices completing ``vectors`` (length-n lists) to a basis."""
    if not vectors:
        return list(range(n))
    _, pivots = rref(vectors, n)
    piv = set(pivots)
    return [j for j in range(n) if j not in piv]


def extend_independent(base, candidates, n):
    """Greedily pick candidates independent of ``base`` and of earlier picks."""
    chosen = []
    current = [list(v) for v in base]
    r = rank(current, n) if current else 0
    for v in candidates:
        trial = current + [list(v)]
        rr = rank(trial, n)
        if rr > r:
            chosen.append(v)
            current = trial
            r = rr
    return chosen


def inverse(mat):
    mat = as_matrix(mat)
    n = len(mat)
    aug = [list(row) + e for row, e in zip(mat, identity(n))]
    r, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in r[:n]]


def solve(mat, b, ncols=None):
    """Some x with mat x = b, or None when b is not in the image."""
    m, n = shape(mat, ncols)
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(mat, b)]
    r, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = r[i][n]
    return x


@dataclass(frozen=True)
class LinearSolveSuite:
    """Rank, kernel, image complement and a preimage solver for one matrix."""

    matrix: tuple
    nrows: int
    ncols: int
    rank: int
    nullspace: tuple
    complement: tuple  # standard basis indices of the target completing the image

    def preimage(self, b):
        return solve([list(r) for r in self.matrix], b, self.ncols)


def linear_solve_suite(mat, ncols=None):
    mat = as_matrix(mat)
    m, n = shape(mat, ncols)
    ns = nullspace(mat, n)
    img = column_space(mat, n)
    comp = complement_indices(img, m)
    rk = len(img)
    assert rk + len(ns) == n
    assert rk + len(comp) == m
    for v in ns:
        assert not any(matvec(mat, v))
    return LinearSolveSuite(
        matrix=tuple(tuple(r) for r in mat), nrows=m, ncols=n, rank=rk,
        nullspace=tuple(tuple(v) for v in ns), complement=tuple(comp),
    )


@dataclass
class HodgeBlock:
    """Hodge data of one degree of a complex V_d --D_d--> V_{d+1}.

    ``reps`` are cocycle representatives of H^d (columns in V_d); ``proj`` is
    the dim H^d x dim V_d projection; ``homotopy`` is dim V_{d-1} x dim V_d.
    """

    reps: list
    proj: list
    homotopy: list


def hodge_decomposition(dims, diff):
    """Hodge decomposition of a finite complex of coordinate spaces.

    ``dims[d]`` is dim V_d and ``diff[d]`` the dim V_{d+1} x dim V_d matrix of
    the differential.  Per degree V_d = B_d + H_d + C_d with C_d spanned by
    the non-pivot standard vectors of ker D_d, B_{d+1} = D_d(C_d), and H_d the
    first cocycles independent of B_d.  The homotopy inverts D on C and kills
    H + C, so h^2 = 0, h iota = 0 and pi h = 0 hold.
    """
    degs = sorted(d for d in dims if dims[d])
    get_dim = lambda d: dims.get(d, 0)

    def dmat(d):
        if d in diff and get_dim(d) and get_dim(d + 1):
            return diff[d]
        return zeros(get_dim(d + 1), get_dim(d))

    cycles, compl, bounds = {}, {}, {}
    for d in degs:
        n = get_dim(d)
        z = nullspace(dmat(d), n)
        cycles[d] = z
        idx = complement_indices(z, n)
        cvecs = []
        for j in idx:
            e = [Fraction(0)] * n
            e[j] = Fraction(1)
            cvecs.append(e)
        compl[d] = cvecs
    for d in degs:
        prev = compl.get(d - 1, [])
        bounds[d] = [matvec(dmat(d - 1), c) for c in prev] if prev else []

    out = {}
    for d in degs:
        n = get_dim(d)
        h = extend_independent(bounds[d], cycles[d], n)
        cols = bounds[d] + h + compl[d]
        if len(cols) != n:
            raise ArithmeticError(f"Hodge decomposition failed in degree {d}; is D^2 = 0?")
        basis_mat = transpose(cols, n)
        inv = inverse(basis_mat)
        nb, nh = len(bounds[d]), len(h)
        proj = inv[nb:nb + nh]
        bcoords = inv[:nb]
        prev_c = compl.get(d - 1, [])
        if nb:
            homotopy = matmul(transpose(prev_c, get_dim(d - 1)), bcoords, nb)
        else:
            homotopy = zeros(get_dim(d - 1), n)
        out[d] = HodgeBlock(reps=h, proj=proj, homotopy=homotopy)
    return out
