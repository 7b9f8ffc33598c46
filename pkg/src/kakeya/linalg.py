"""Dense Gaussian elimination over GF(q) and vanishing-polynomial search."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .field import FieldSpec
from .poly import Polynomial, monomials_of_degree


@dataclass(frozen=True)
class MatrixGF:
    spec: FieldSpec
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise UsageError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, spec, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise UsageError("ragged matrix")
        return cls(spec, len(rows), cols, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, spec, n):
        return cls.from_rows(spec, [[int(i == j) for j in range(n)] for i in range(n)], n)

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self):
        return [self.row(i) for i in range(self.rows)]

    def matvec(self, v):
        if len(v) != self.cols:
            raise UsageError("vector length mismatch")
        spec = self.spec
        out = []
        for r in self.tolist():
            acc = 0
            for a, b in zip(r, v):
                if a and b:
                    acc = spec.add(acc, spec.mul(a, b))
            out.append(acc)
        return out


def rref(m: MatrixGF):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    spec = m.spec
    a = m.tolist()
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pr = next((i for i in range(r, m.rows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        iv = spec.inv(a[r][c])
        if iv != 1:
            a[r] = [spec.mul(iv, v) for v in a[r]]
        prow = a[r]
        for i in range(m.rows):
            f = a[i][c]
            if i != r and f:
                nf = spec.neg(f)
                row = a[i]
                for j in range(c, m.cols):
                    if prow[j]:
                        row[j] = spec.add(row[j], spec.mul(nf, prow[j]))
        pivots.append(c)
        r += 1
    return MatrixGF.from_rows(spec, a, m.cols), pivots


def rank(m: MatrixGF) -> int:
    return len(rref(m)[1])


def nullspace_vector(m: MatrixGF):
    """Canonical nonzero kernel vector, or ``None`` when the kernel is trivial.

    The smallest free column is set to 1 and every other free column to 0.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    if not free:
        return None
    f = free[0]
    spec = m.spec
    v = [0] * m.cols
    v[f] = 1
    for i, pc in enumerate(pivots):
        v[pc] = spec.neg(reduced.entries[i * m.cols + f])
    return v


def evaluation_matrix(spec, points, monomials) -> MatrixGF:
    """Rows = points, columns = monomials, entry = monomial value at the point."""
    rows = []
    maxe = max((max(mono) for mono in monomials), default=0)
    for x in points:
        pows = []
        for xi in x:
            row = [1]
            for _ in range(maxe):
                row.append(spec.mul(row[-1], xi))
            pows.append(row)
        r = []
        for mono in monomials:
            v = 1
            for i, e in enumerate(mono):
                if e:
                    v = spec.mul(v, pows[i][e])
            r.append(v)
        rows.append(r)
    return MatrixGF.from_rows(spec, rows, len(monomials))


def vanishing_polynomial(points, d: int, mode: str = "exactly", spec=None, n=None):
    """Nonzero polynomial of degree exactly/at most ``d`` vanishing on ``points``.

    ``points`` is a :class:`~kakeya.core.PointSet` or, with ``spec`` and ``n``,
    any iterable of coordinate tuples.  Returns ``None`` when only the zero
    polynomial of that degree class vanishes everywhere on the set.
    """
    if hasattr(points, "coords"):
        spec, n, pts = points.spec, points.n, points.coords()
    else:
        if spec is None or n is None:
            raise UsageError("spec and n are required for raw point lists")
        pts = [tuple(p) for p in points]
    if d < 0:
        raise UsageError("degree must be non-negative")
    for x in pts:
        if len(x) != n:
            raise UsageError(f"point {x} does not have dimension {n}")
    monos = monomials_of_degree(n, d, mode)
    v = nullspace_vector(evaluation_matrix(spec, pts, monos))
    if v is None:
        return None
    g = Polynomial(spec, n, dict(zip(monos, v)))
    assert not g.is_zero() and all(g.evaluate(x) == 0 for x in pts)
    return g
