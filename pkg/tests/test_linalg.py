import random
from fractions import Fraction

import pytest

from ibforms.domains import QQ, ZZ, IntegersMod, Laurent, PrimeField, Scalar
from ibforms.errors import UnsupportedDomain
from ibforms.linalg import (Matrix, RowSpan, dedup_rows, kernel_and_rank,
                            pid_column_kernel, rank, smith_normal_form,
                            smith_with_transforms, solve_left, spans_equal,
                            vec)


def diag_entries(D):
    return [D[i, i] for i in range(min(D.nrows, D.ncols))]


def test_snf_identity_is_identity():
    M = Matrix.identity(ZZ, 3)
    U, D, V = smith_normal_form(M)
    assert D == M and U == M and V == M


def test_snf_2_3_gives_1_6():
    # by-hand row/column reduction: gcd(2,3)=1 first, product 6 second
    M = Matrix.from_rows(ZZ, [[2, 0], [0, 3]])
    U, D, V = smith_normal_form(M)
    assert (U * M * V) == D
    assert diag_entries(D) == [ZZ(1), ZZ(6)]


def test_snf_laurent_unit_absorption():
    R = Laurent(QQ)
    t = R.t()
    M = Matrix(R, [[t, R.zero_scalar()], [R.zero_scalar(), t - 1]])
    U, D, V = smith_normal_form(M)
    assert (U * M * V) == D
    assert D[0, 0] == 1
    # canonical normalization: valuation 0, monic leading coefficient
    assert D[1, 1] == t - 1
    assert U.det().is_unit() and V.det().is_unit()


def test_snf_rejects_fields():
    with pytest.raises(UnsupportedDomain):
        smith_normal_form(Matrix.identity(QQ, 2))


def test_snf_round_trip_randomized():
    rng = random.Random(2024)
    for _ in range(60):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = Matrix.from_rows(
            ZZ, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        U, D, V = smith_normal_form(M)
        assert (U * M * V) == D
        assert U.det().is_unit() and V.det().is_unit()
        ds = [d for d in diag_entries(D) if d]
        for a, b in zip(ds, ds[1:]):
            assert b.exact_div(a) is not None


def test_smith_transform_inverse_tracked():
    rng = random.Random(5)
    for _ in range(20):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = Matrix.from_rows(
            ZZ, [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)])
        U, D, V, Vinv = smith_with_transforms(M)
        assert (V * Vinv) == Matrix.identity(ZZ, n)


def test_kernel_zero_matrix():
    K, r = kernel_and_rank(Matrix.zeros(QQ, 2, 2))
    assert r == 0 and len(K) == 2


def test_kernel_identity_gf5():
    K, r = kernel_and_rank(Matrix.identity(PrimeField(5), 3))
    assert r == 3 and K == []


def test_kernel_rank_one_2x2():
    # 2x2 elimination: row2 = 2*row1, kernel spanned by (2, -1)
    M = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    K, r = kernel_and_rank(M)
    assert r == 1 and len(K) == 1
    target = Matrix.from_rows(QQ, [[2, -1]])
    assert spans_equal(Matrix(QQ, K), target)


def test_kernel_rejects_composite_modulus():
    with pytest.raises(UnsupportedDomain):
        kernel_and_rank(Matrix.identity(IntegersMod(6), 2))


def test_kernel_rank_agrees_with_snf_rank():
    rng = random.Random(77)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        _, D, _ = smith_normal_form(Matrix.from_rows(ZZ, rows))
        snf_rank = sum(1 for d in diag_entries(D) if d)
        _, rk = kernel_and_rank(Matrix.from_rows(QQ, rows))
        assert rk == snf_rank


def test_pid_column_kernel_is_saturated():
    # kernel of [[2, 4]] over Z must contain (2, -1), not only (4, -2)
    M = Matrix.from_rows(ZZ, [[2, 4]])
    K = pid_column_kernel(M)
    assert len(K) == 1
    span = RowSpan(Matrix(ZZ, [K[0]]))
    assert span.contains(vec(ZZ, [2, -1])) or span.contains(vec(ZZ, [-2, 1]))


def test_berkowitz_determinant():
    assert Matrix.from_rows(ZZ, [[0, 0, 1], [0, 2, 0], [1, 0, 0]]).det() == -2
    assert Matrix.from_rows(ZZ, [[1, 2, 3], [4, 5, 6], [7, 8, 10]]).det() == -3
    # works over a non-domain
    R = IntegersMod(4)
    assert Matrix.from_rows(R, [[2, 1], [1, 2]]).det() == 3


def test_solve_left_over_z_respects_divisibility():
    M = Matrix.from_rows(ZZ, [[2, 0], [0, 1]])
    assert solve_left(M, vec(ZZ, [1, 0])) is None
    y = solve_left(M, vec(ZZ, [4, 3]))
    assert y is not None and y[0] == 2 and y[1] == 3


def test_row_span_membership_mod_n():
    R = IntegersMod(4)
    M = Matrix.from_rows(R, [[2, 0]])
    span = RowSpan(M)
    assert span.contains(vec(R, [2, 0]))
    assert not span.contains(vec(R, [1, 0]))
    # 4*e_1 = 0 mod 4 is implicitly in every span
    assert span.contains(vec(R, [0, 0]))


def test_dedup_rows_drops_zero_and_duplicates():
    M = Matrix.from_rows(ZZ, [[0, 0], [1, 2], [1, 2], [3, 4]])
    D = dedup_rows(M)
    assert D.nrows == 2 and D.row(0) == vec(ZZ, [1, 2])


def test_rank_over_laurent_fraction_free():
    R = Laurent(QQ)
    t = R.t()
    M = Matrix(R, [[t, t * t], [R(1), t]])
    assert rank(M) == 1
