"""Shared constructions for the test suite."""

from fractions import Fraction

import pytest

from ibforms.domains import QQ, Scalar
from ibforms.algebras import sl
from ibforms.descent import Cocycle, QuadGalois
from ibforms.linalg import Matrix


def quaternion_cocycle_sl2(galois):
    """Conjugation by [[0, 2], [1, 0]] on sl2 coordinates (e, h, f):
    e -> f/2, h -> -h, f -> 2e."""
    S = galois.ext
    half = Scalar(S, (Fraction(1, 2), Fraction(0)))
    U = Matrix(S, [[S(0), S(0), S(2)],
                   [S(0), S(-1), S(0)],
                   [half, S(0), S(0)]])
    return Cocycle(galois, U)


def quaternion_cocycle_mat2(galois):
    """The same conjugation on M2 coordinates (E11, E12, E21, E22)."""
    S = galois.ext
    half = Scalar(S, (Fraction(1, 2), Fraction(0)))
    U = Matrix(S, [[S(0), S(0), S(0), S(1)],
                   [S(0), S(0), half, S(0)],
                   [S(0), S(2), S(0), S(0)],
                   [S(1), S(0), S(0), S(0)]])
    return Cocycle(galois, U)


def sl3_neg_transpose_sigma():
    """The order-2 automorphism X -> -X^T of sl3 in basis coordinates."""
    def E(i, j):
        M = [[Fraction(0)] * 3 for _ in range(3)]
        M[i][j] = Fraction(1)
        return M

    basis_mats = [E(0, 1), E(0, 2), E(1, 2),
                  [[Fraction(1), 0, 0], [0, Fraction(-1), 0], [0, 0, Fraction(0)]],
                  [[Fraction(0), 0, 0], [0, Fraction(1), 0], [0, 0, Fraction(-1)]],
                  E(1, 0), E(2, 0), E(2, 1)]

    def to_coords(P):
        return [P[0][1], P[0][2], P[1][2],
                P[0][0], P[0][0] + P[1][1],
                P[1][0], P[2][0], P[2][1]]

    cols = []
    for M in basis_mats:
        Mt = [[-M[c][r] for c in range(3)] for r in range(3)]
        cols.append(to_coords(Mt))
    return Matrix(QQ, [[QQ(cols[j][i]) for j in range(8)] for i in range(8)])


@pytest.fixture
def sl2_quaternion_twist():
    from ibforms.descent import twist
    galois = QuadGalois(QQ, 2)
    return twist(sl(2, QQ), galois, quaternion_cocycle_sl2(galois),
                 name="quat_sl2")
