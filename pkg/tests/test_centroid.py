from ibforms.domains import QQ, ZZ, PrimeField
from ibforms.algebras import direct_sum, mat, sl, zero_algebra, zorn
from ibforms.centroid import centroid, centroid_ibf_bridge, is_central
from ibforms.canonical import (matrix_trace_form, normalized_sl2_form,
                               zorn_trace_form)
from ibforms.linalg import Matrix


def test_centroid_sl2_q_is_scalars():
    c = centroid(sl(2, QQ), "regular")
    assert c.rank() == 1 and c.contains_identity
    assert is_central(sl(2, QQ))


def test_centroid_direct_sum_has_block_scalars():
    d = direct_sum(sl(2, QQ), sl(2, QQ))
    c = centroid(d, "regular")
    assert c.rank() == 2
    assert not is_central(d)


def test_centroid_mat2_is_scalars():
    c = centroid(mat(2, QQ), "regular")
    assert c.rank() == 1
    assert is_central(mat(2, QQ))


def test_zorn_is_central():
    assert is_central(zorn(QQ))


def test_zero_algebra_centroid_is_everything():
    za = zero_algebra(2, QQ)
    c = centroid(za, "regular")
    assert c.rank() == 4
    assert not is_central(za)


def test_every_centroid_basis_matrix_satisfies_identities():
    B = zorn(QQ)
    c = centroid(B, "regular")
    for X in c.basis:
        for i in range(B.n):
            for j in range(B.n):
                from ibforms.linalg import matrix_times_col, unit_vec
                chi_prod = matrix_times_col(X, B.mul_basis(i, j))
                left = B.mul_vec(unit_vec(QQ, B.n, i), matrix_times_col(X, unit_vec(QQ, B.n, j)))
                right = B.mul_vec(matrix_times_col(X, unit_vec(QQ, B.n, i)), unit_vec(QQ, B.n, j))
                assert chi_prod == left == right


def test_bridge_dimensions_and_matching():
    cases = [
        (sl(2, QQ), 1),
        (sl(2, PrimeField(2)), 4),
        (mat(2, QQ), 1),
        (zorn(QQ), 1),
        (zero_algebra(2, QQ), 4),
    ]
    for alg, expected in cases:
        cert, matched = centroid_ibf_bridge(alg)
        assert cert["ok"], (alg.name, cert)
        assert cert["dual_centroid_rank"] == expected
        for beta in matched:
            assert beta.is_invariant()


def test_bridge_over_z_lattice_case():
    cert, _ = centroid_ibf_bridge(sl(2, ZZ))
    assert cert["ok"] and cert["hom_ibf_rank"] == 1


def test_nonsingular_central_forces_rank_one_generated_by_form():
    cases = [
        (sl(2, QQ), normalized_sl2_form(QQ, sl(2, QQ))),
        (mat(2, QQ), matrix_trace_form(mat(2, QQ))),
        (mat(3, QQ), matrix_trace_form(mat(3, QQ))),
        (zorn(QQ), zorn_trace_form(zorn(QQ))),
    ]
    for alg, beta in cases:
        assert beta.is_nonsingular() and is_central(alg)
        cert, matched = centroid_ibf_bridge(alg)
        assert cert["dual_centroid_rank"] == 1
        # beta generates: the single matched form is a scalar multiple
        from ibforms.forms import proportionality_constant
        c = proportionality_constant(matched[0], beta)
        assert c is not None
