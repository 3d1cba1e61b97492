"""Small exact linear algebra over the rationals.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  Everything
returns fresh immutable values; nothing here ever touches a float.
"""

from fractions import Fraction
from itertools import chain

Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]


def vec(*entries) -> Vec:
    return tuple(Fraction(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, v: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in v)


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def mat(rows) -> Mat:
    return tuple(tuple(Fraction(e) for e in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m, strict=True))


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Row-reduce in place; return (reduced rows, pivot column indices)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Mat) -> int:
    rows = [list(map(Fraction, row)) for row in m]
    _, pivots = _echelon(rows)
    return len(pivots)


def mat_inv(m: Mat) -> Mat:
    n = len(m)
    aug = [list(chain(map(Fraction, row), identity(n)[i])) for i, row in enumerate(m)]
    rows, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve_affine(m: Mat, b: Vec) -> Vec | None:
    """One exact solution of m x = b, or None if inconsistent."""
    if not m:
        return zero_vec(0)
    n = len(m[0])
    aug = [list(chain(map(Fraction, row), [Fraction(bi)])) for row, bi in zip(m, b)]
    rows, pivots = _echelon(aug)
    for row in rows:
        if all(e == 0 for e in row[:n]) and row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        if c < n:
            x[c] = rows[r][n]
        elif rows[r][n] != 0:
            return None
    return tuple(x)


def nullspace(m: Mat) -> tuple[Vec, ...]:
    """Basis of the kernel of m (acting on column vectors)."""
    if not m:
        return ()
    n = len(m[0])
    rows = [list(map(Fraction, row)) for row in m]
    rows, pivots = _echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def is_positive_definite(g: Mat) -> bool:
    """Leading principal minors all positive."""
    n = len(g)
    for k in range(1, n + 1):
        minor = [row[:k] for row in g[:k]]
        if _det(minor) <= 0:
            return False
    return True


def _det(rows) -> Fraction:
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det
