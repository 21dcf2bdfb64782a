"""Exact linear algebra over the scalar fields, by fraction-free elimination."""

from .errors import SingularMatrix
from .scalars import div, is_zero


def _echelon(rows, ncols):
    """Bareiss row echelon form in place; returns (pivot columns, row-swap sign)."""
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    sign = 1
    for col in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not is_zero(rows[i][col])), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            sign = -sign
        piv = rows[r][col]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            lead = row[col]
            if is_zero(lead):
                if prev != 1:
                    for j in range(col + 1, ncols):
                        if not is_zero(row[j]):
                            row[j] = div(piv * row[j], prev)
                elif piv != 1:
                    for j in range(col + 1, ncols):
                        if not is_zero(row[j]):
                            row[j] = piv * row[j]
                continue
            for j in range(col + 1, ncols):
                v = piv * row[j] - lead * prow[j]
                row[j] = div(v, prev) if prev != 1 else v
            row[col] = 0
        prev = piv
        pivots.append(col)
        r += 1
    return pivots, sign


def determinant(matrix):
    n = len(matrix)
    if n == 0:
        return 1
    rows = [list(r) for r in matrix]
    pivots, sign = _echelon(rows, n)
    if len(pivots) < n:
        return 0
    return rows[n - 1][n - 1] if sign == 1 else -rows[n - 1][n - 1]


def rank(matrix, ncols=None):
    if not matrix:
        return 0
    ncols = len(matrix[0]) if ncols is None else ncols
    rows = [list(r) for r in matrix]
    pivots, _ = _echelon(rows, ncols)
    return len(pivots)


def _reduced(rows, ncols):
    """Reduced row echelon form over the field; returns pivot columns."""
    pivots, _ = _echelon(rows, ncols)
    for r in range(len(pivots) - 1, -1, -1):
        col = pivots[r]
        piv = rows[r][col]
        rows[r] = [div(v, piv) if not is_zero(v) else 0 for v in rows[r]]
        for i in range(r):
            lead = rows[i][col]
            if not is_zero(lead):
                rows[i] = [a - lead * b for a, b in zip(rows[i], rows[r])]
    return pivots


def nullspace(matrix, ncols=None):
    """A basis of {x : matrix x = 0}."""
    ncols = len(matrix[0]) if matrix and ncols is None else (ncols or 0)
    rows = [list(r) for r in matrix]
    pivots = _reduced(rows, ncols) if rows else []
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, col in enumerate(pivots):
            vec[col] = -rows[r][f]
        basis.append(vec)
    return basis


def solve(matrix, rhs):
    """Solve matrix X = rhs for a square nonsingular matrix; rhs is a list of columns."""
    n = len(matrix)
    rows = [list(matrix[i]) + [col[i] for col in rhs] for i in range(n)]
    pivots = _reduced(rows, n + len(rhs))
    if [p for p in pivots if p < n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [[rows[i][n + k] for i in range(n)] for k in range(len(rhs))]


def inverse(matrix):
    n = len(matrix)
    identity = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    cols = solve(matrix, identity)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), 0) for j in range(len(b[0]))] for i in range(len(a))]


def leading_principal_minors(matrix):
    return [determinant([row[:k] for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def components(matrix):
    """Connected components of the bipartite row/column graph of nonzero entries.

    Returns a list of (row indices, column indices).  Rows or columns that
    are entirely zero form singleton components with an empty partner.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    parent = list(range(nrows + ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(nrows):
        for j in range(ncols):
            if not is_zero(matrix[i][j]):
                a, b = find(i), find(nrows + j)
                if a != b:
                    parent[a] = b
    groups = {}
    for x in range(nrows + ncols):
        groups.setdefault(find(x), []).append(x)
    out = []
    for members in groups.values():
        rows = [x for x in members if x < nrows]
        cols = [x - nrows for x in members if x >= nrows]
        out.append((rows, cols))
    out.sort(key=lambda rc: (rc[0][:1] or [nrows], rc[1][:1] or [ncols]))
    return out


def block_solve(matrix, rhs):
    """Solve a square system by splitting it into independent blocks.

    Returns the solution columns and the product of block determinants
    (the determinant up to sign).  Raises SingularMatrix with the zero
    determinant if a block is singular or not square.
    """
    n = len(matrix)
    solution = [[0] * n for _ in rhs]
    det = 1
    for rows, cols in components(matrix):
        if len(rows) != len(cols):
            raise SingularMatrix("block is not square")
        sub = [[matrix[i][j] for j in cols] for i in rows]
        det = det * determinant(sub)
        if is_zero(det):
            raise SingularMatrix("block is singular")
        sol = solve(sub, [[col[i] for i in rows] for col in rhs])
        for k, s in enumerate(sol):
            for idx, j in enumerate(cols):
                solution[k][j] = s[idx]
    return solution, det
