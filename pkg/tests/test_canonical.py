import random
from fractions import Fraction

import pytest

from ibforms.domains import (QQ, ZZ, Laurent, PrimeField, QuadExt, Scalar,
                             canonical_map, quadext_conjugation)
from ibforms.algebras import base_change_algebra, mat, sl, zero_algebra, zorn
from ibforms.canonical import (SemilinearAuto, is_automorphism_invariant,
                               killing_form, killing_gamma_report,
                               matrix_trace_form, nilpotent_exponential,
                               normalized_sl2_form, semilinear_killing_identity,
                               zorn_trace_form)
from ibforms.errors import NotLie, ShapeMismatch
from ibforms.forms import BilinearForm, proportionality_constant
from ibforms.ibf import unital_projection_form
from ibforms.linalg import Matrix, vec


def test_killing_sl2_values():
    # ad h = diag(2, 0, -2), ad e, ad f nilpotent: kappa(h,h)=8, kappa(e,f)=4
    k = killing_form(sl(2, QQ))
    expect = Matrix.from_rows(QQ, [[0, 0, 4], [0, 8, 0], [4, 0, 0]])
    assert k.gram == expect


def test_killing_of_abelian_algebra_is_zero():
    assert killing_form(zero_algebra(3, QQ)).gram.is_zero()


def test_killing_sl2_vanishes_mod_2():
    assert killing_form(sl(2, PrimeField(2))).gram.is_zero()


def test_killing_requires_lie():
    with pytest.raises(NotLie):
        killing_form(mat(2, QQ))


def test_killing_gamma_proportionality_reported():
    rep = killing_gamma_report(QQ)
    assert rep["proportional"]
    assert rep["constant"] == "4"
    assert not rep["matches_literature"]
    assert "discrepancy_flag" in rep


def test_matrix_trace_form_against_product_oracle():
    # oracle: literal matrix products tr(E_ab E_cd)
    n = 2
    m = mat(n, ZZ)
    beta = matrix_trace_form(m)

    def E(i, j):
        M = [[0] * n for _ in range(n)]
        M[i][j] = 1
        return M

    def mul(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)]

    basis = [E(i, j) for i in range(n) for j in range(n)]
    for u in range(n * n):
        for v in range(n * n):
            P = mul(basis[u], basis[v])
            assert beta.gram[u, v] == sum(P[i][i] for i in range(n))
    assert beta.gram.det() == -1
    assert beta.is_nonsingular()


def test_trace_form_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        matrix_trace_form(sl(2, QQ))
    with pytest.raises(ShapeMismatch):
        zorn_trace_form(mat(2, QQ))


def test_zorn_trace_values():
    tau = zorn_trace_form(zorn(QQ))
    assert tau.gram[0, 0] == 1          # tau(e1, e1) = 1
    assert tau.gram[1, 1] == 1
    assert tau.gram[0, 1] == 0          # tau(e1, e2) = 0
    for i in range(3):
        for j in range(3):
            want = -1 if i == j else 0
            assert tau.gram[2 + i, 5 + j] == want     # tau(u_i, x_j)
            assert tau.gram[5 + i, 2 + j] == want
    assert tau.gram.det().is_unit()


def test_gamma_gram():
    g = normalized_sl2_form(ZZ, sl(2, ZZ))
    assert g.gram == Matrix.from_rows(ZZ, [[0, 0, 1], [0, 2, 0], [1, 0, 0]])


def test_killing_commutes_with_base_change():
    sz = sl(2, ZZ)
    kz = killing_form(sz)
    for target in [QQ, PrimeField(2), PrimeField(3)]:
        al = canonical_map(ZZ, target)
        B = base_change_algebra(sz, al)
        assert killing_form(B).gram == kz.base_change(al, B).gram
    sq = sl(2, QQ)
    al = canonical_map(QQ, Laurent(QQ))
    B = base_change_algebra(sq, al)
    assert killing_form(B).gram == killing_form(sq).base_change(al, B).gram


def test_semilinear_identity_for_identity_auto():
    s = sl(2, QQ)
    f = SemilinearAuto(s, Matrix.identity(QQ, 3))
    assert semilinear_killing_identity(s, f)


def test_semilinear_identity_for_coordinate_conjugation():
    S = QuadExt(QQ, 2)
    sS = sl(2, S)
    f = SemilinearAuto(sS, Matrix.identity(S, 3),
                       alpha=quadext_conjugation(S), name="conj")
    assert semilinear_killing_identity(sS, f)


def test_semilinear_identity_reduces_to_aut_invariance():
    s = sl(2, QQ)
    w = nilpotent_exponential(s, 0)
    assert semilinear_killing_identity(s, w)


def test_gamma_invariant_under_exponentials():
    s = sl(2, QQ)
    gamma = normalized_sl2_form(QQ, s)
    autos = [nilpotent_exponential(s, 0), nilpotent_exponential(s, 2)]
    assert is_automorphism_invariant(gamma, autos)


def test_trace_invariant_under_unipotent_conjugation():
    m = mat(2, QQ)
    tr = matrix_trace_form(m)
    g = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    gi = [[Fraction(1), Fraction(-1)], [Fraction(0), Fraction(1)]]
    cols = []
    for i in range(2):
        for j in range(2):
            E = [[Fraction(0)] * 2 for _ in range(2)]
            E[i][j] = Fraction(1)
            P = [[sum(g[r][a] * E[a][b] * gi[b][c]
                      for a in range(2) for b in range(2))
                  for c in range(2)] for r in range(2)]
            cols.append([P[0][0], P[0][1], P[1][0], P[1][1]])
    F = Matrix(QQ, [[QQ(cols[j][i]) for j in range(4)] for i in range(4)])
    conj = SemilinearAuto(m, F, name="conj[[1,1],[0,1]]")
    assert is_automorphism_invariant(tr, [conj])


def test_random_gram_perturbation_fails_invariance():
    s = sl(2, QQ)
    w = nilpotent_exponential(s, 0)
    rng = random.Random(4)
    gamma = normalized_sl2_form(QQ, s)
    bad = Matrix(QQ, [list(r) for r in gamma.gram.a])
    bad.a[0][0] = QQ(rng.randint(1, 5))
    assert not is_automorphism_invariant(BilinearForm(s, bad), [w])


def test_trace_form_equals_projection_form():
    for n in (2, 3):
        m = mat(n, QQ)
        e11 = vec(QQ, [1 if i == 0 else 0 for i in range(n * n)])
        assert matrix_trace_form(m).gram == unital_projection_form(m, e11).gram


def test_pullback_changes_gram_for_non_orthogonal_map():
    s = sl(2, QQ)
    gamma = normalized_sl2_form(QQ, s)
    F = Matrix.from_rows(QQ, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert gamma.pullback(F).gram != gamma.gram


def test_kappa_proportional_to_gamma_entrywise():
    s = sl(2, ZZ)
    c = proportionality_constant(killing_form(s), normalized_sl2_form(ZZ, s))
    assert c == 4
