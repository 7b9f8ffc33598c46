import random
from itertools import product
from math import comb

import pytest

from kakeya.core import PointSet
from kakeya.errors import UsageError
from kakeya.field import FieldSpec
from kakeya.linalg import (MatrixGF, evaluation_matrix, nullspace_vector, rank, rref,
                           vanishing_polynomial)
from kakeya.poly import Polynomial, monomials_of_degree

from conftest import gf


def M(spec, rows):
    return MatrixGF.from_rows(spec, rows)


def test_rref_examples():
    f5 = FieldSpec(5)
    eye = MatrixGF.identity(f5, 4)
    assert rref(eye) == (eye, [0, 1, 2, 3])
    zero = M(f5, [[0, 0, 0], [0, 0, 0]])
    assert rref(zero) == (zero, [])
    f2 = FieldSpec(2)
    assert rref(M(f2, [[1, 1], [1, 1]])) == (M(f2, [[1, 1], [0, 0]]), [0])


def test_nullspace_examples():
    f3 = FieldSpec(3)
    assert nullspace_vector(M(f3, [[1, 0, 0]])) == [0, 1, 0]
    assert nullspace_vector(M(FieldSpec(7), [[1, 2], [3, 5]])) is None


def test_nullspace_multiply_back(rng):
    f7 = FieldSpec(7)
    for _ in range(50):
        m = M(f7, [[rng.randrange(7) for _ in range(8)] for _ in range(5)])
        v = nullspace_vector(m)
        assert v is not None and any(v)
        assert m.matvec(v) == [0] * 5


@pytest.mark.parametrize("q", [2, 4, 5, 9])
def test_rref_idempotent_and_pivots_increasing(q, rng):
    spec = gf(q)
    for _ in range(30):
        rows, cols = rng.randrange(1, 7), rng.randrange(1, 9)
        m = M(spec, [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)])
        r, piv = rref(m)
        assert rref(r) == (r, piv)
        assert piv == sorted(set(piv))
        v = nullspace_vector(m)
        if v is not None:
            assert m.matvec(v) == [0] * rows
            assert len(piv) < cols
        else:
            assert len(piv) == cols


def test_nullspace_canonical_first_free_column():
    f5 = FieldSpec(5)
    # x0 + 2 x2 = 0, x1 + x2 + x3 = 0 -> free columns 2, 3; pick column 2
    v = nullspace_vector(M(f5, [[1, 0, 2, 0], [0, 1, 1, 1]]))
    assert v == [3, 4, 1, 0]


def test_vanishing_examples():
    f3 = FieldSpec(3)
    k = PointSet.from_points(f3, 2, [(0, 0)])
    # 1x3 matrix [1, 0, 0] over columns (1, x2, x1): free column x2 first
    assert vanishing_polynomial(k, 1, "at_most") == Polynomial(f3, 2, {(0, 1): 1})
    full = PointSet.full(f3, 2)
    assert rank(evaluation_matrix(f3, full.coords(), monomials_of_degree(2, 2, "at_most"))) == 6
    assert vanishing_polynomial(full, 2, "at_most") is None
    empty = PointSet(f3, 2, ())
    assert vanishing_polynomial(empty, 0, "exactly") == Polynomial.constant(f3, 2, 1)


def test_vanishing_wrong_dimension():
    with pytest.raises(UsageError):
        vanishing_polynomial([(0, 0, 0)], 1, spec=FieldSpec(3), n=2)


@pytest.mark.parametrize("q,n", [(3, 2), (5, 2), (4, 3), (7, 2)])
def test_pigeonhole_guarantee(q, n, rng):
    spec = gf(q)
    allpts = list(product(range(q), repeat=n))
    for d in range(1, q + 1):
        monos = comb(d + n - 1, n - 1)
        for _ in range(10):
            size = rng.randrange(0, min(monos, len(allpts)))
            k = PointSet.from_points(spec, n, rng.sample(allpts, size))
            g = vanishing_polynomial(k, d, "exactly")
            assert g is not None and not g.is_zero()
            assert g.is_homogeneous() and g.degree == d
            assert all(g.evaluate(x) == 0 for x in k.coords())


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3), (7, 2)])
def test_full_space_admits_no_low_degree_vanishing_polynomial(q, n):
    spec = gf(q)
    assert vanishing_polynomial(PointSet.full(spec, n), q - 1, "at_most") is None
    # degree q is enough: x1^q - x1 vanishes everywhere
    g = vanishing_polynomial(PointSet.full(spec, n), q, "at_most")
    assert g is not None and g.degree == q
