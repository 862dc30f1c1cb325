import pytest

from ibforms.domains import (QQ, ZZ, Laurent, PrimeField, QuadExt, Scalar,
                             canonical_map)
from ibforms.algebras import base_change_algebra, mat, sl, zero_algebra
from ibforms.canonical import killing_form, matrix_trace_form, normalized_sl2_form
from ibforms.descent import (Cocycle, QuadGalois, base_change_form,
                             descend_form, pullback_form, split_check,
                             split_isomorphism, twist, verify_functor_descent,
                             verify_ibf_base_change)
from ibforms.errors import InvalidCocycle, TwoNotUnit, ValueNotInR
from ibforms.forms import BilinearForm
from ibforms.ibf import check_ibf_principle, ibf_module, induced_map
from ibforms.linalg import Matrix

from conftest import quaternion_cocycle_mat2, quaternion_cocycle_sl2


def test_quad_galois_invariants():
    g = QuadGalois(QQ, 2)
    assert not g.split and g.two_is_unit
    g9 = QuadGalois(QQ, 9)
    assert g9.split


def test_trivial_cocycle_returns_the_source():
    g = QuadGalois(QQ, 2)
    s = sl(2, QQ)
    tf = twist(s, g, Cocycle.trivial(g, 3))
    for i in range(3):
        for j in range(3):
            assert tf.algebra.mul_basis(i, j) == s.mul_basis(i, j)
    assert split_check(tf)["ok"]


def test_trivial_cocycle_on_zorn():
    from ibforms.algebras import zorn
    g = QuadGalois(QQ, 5)
    z = zorn(QQ)
    tf = twist(z, g, Cocycle.trivial(g, 8))
    assert split_check(tf)["ok"]
    assert tf.algebra.is_unital()


def test_quaternion_twist_of_sl2(sl2_quaternion_twist):
    tf = sl2_quaternion_twist
    B = tf.algebra
    assert B.n == 3
    assert B.is_lie()
    assert split_check(tf)["ok"]


def test_invalid_cocycle_rejected():
    g = QuadGalois(QQ, 2)
    S = g.ext
    bad = Matrix(S, [[S(1), S(1), S(0)], [S(0), S(1), S(0)], [S(0), S(0), S(1)]])
    with pytest.raises(InvalidCocycle):
        twist(sl(2, QQ), g, Cocycle(g, bad))


def test_cocycle_condition_enforced():
    g = QuadGalois(QQ, 2)
    S = g.ext
    # multiplicative (an automorphism) but U*sigma(U) = 4 != 1
    U = Matrix(S, [[S(2), S(0), S(0)], [S(0), S(1), S(0)],
                   [S(0), S(0), Scalar(S, S.from_json("1/2"))]])
    # e -> 2e, h -> h, f -> f/2 is conjugation by diag(2,1): an automorphism
    with pytest.raises(InvalidCocycle):
        twist(sl(2, QQ), g, Cocycle(g, U))


def test_two_not_unit_rejected():
    g = QuadGalois(PrimeField(2), 1)
    with pytest.raises(TwoNotUnit):
        twist(sl(2, PrimeField(2)), g, Cocycle.trivial(g, 3))


def test_split_case_gives_explicit_isomorphism_to_sl2():
    g9 = QuadGalois(QQ, 9)
    s = sl(2, QQ)
    tf = twist(s, g9, quaternion_cocycle_sl2(g9))
    P = split_isomorphism(tf)
    assert P.det().is_unit()


def test_descend_killing_trivial_cocycle():
    g = QuadGalois(QQ, 2)
    s = sl(2, QQ)
    tf = twist(s, g, Cocycle.trivial(g, 3))
    k = killing_form(s)
    kB = descend_form(k, tf)
    assert kB.gram == killing_form(tf.algebra).gram


def test_descend_killing_quaternion(sl2_quaternion_twist):
    tf = sl2_quaternion_twist
    k = killing_form(sl(2, QQ))
    kB = descend_form(k, tf)
    # all values landed in Q and agree with the intrinsic Killing form
    assert kB.gram == killing_form(tf.algebra).gram
    assert kB.is_nonsingular()
    assert check_ibf_principle(tf.algebra, kB)["holds"]


def test_descend_trace_quaternion_mat2():
    g = QuadGalois(QQ, 2)
    m = mat(2, QQ)
    tf = twist(m, g, quaternion_cocycle_mat2(g), name="quat_mat2")
    assert tf.algebra.is_unital() and tf.algebra.is_associative()
    trB = descend_form(matrix_trace_form(m), tf)
    assert trB.is_nonsingular() and trB.is_invariant()
    assert check_ibf_principle(tf.algebra, trB)["holds"]


def test_corrupted_form_raises_value_not_in_r(sl2_quaternion_twist):
    bad = BilinearForm.from_rows(sl(2, QQ), [[1, 0, 1], [0, 2, 0], [1, 0, 0]])
    with pytest.raises(ValueNotInR) as exc:
        descend_form(bad, sl2_quaternion_twist)
    assert exc.value.pair is not None


def test_base_change_form_examples():
    gz = normalized_sl2_form(ZZ, sl(2, ZZ))
    gq = base_change_form(gz, canonical_map(ZZ, QQ))
    assert gq.gram == normalized_sl2_form(QQ, sl(2, QQ)).gram


def test_form_base_change_transitivity():
    gz = normalized_sl2_form(ZZ, sl(2, ZZ))
    f = canonical_map(ZZ, QQ)
    g = canonical_map(QQ, Laurent(QQ))
    two_step = base_change_form(base_change_form(gz, f), g)
    one_step = base_change_form(gz, f.then(g))
    assert two_step.gram == one_step.gram


def test_pullback_contravariant_composition():
    s = sl(2, QQ)
    gamma = normalized_sl2_form(QQ, s)
    F = Matrix.from_rows(QQ, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    G = Matrix.from_rows(QQ, [[2, 0, 0], [0, 1, 0], [1, 0, 1]])
    lhs = pullback_form(gamma, G * F)
    rhs = pullback_form(pullback_form(gamma, G), F)
    assert lhs.gram == rhs.gram


def test_induced_map_commutes_with_base_change():
    # (beta bar)_S = (beta_S) bar after the generator identification
    cases = [
        (sl(2, ZZ), normalized_sl2_form(ZZ, sl(2, ZZ)), canonical_map(ZZ, QQ)),
        (mat(2, ZZ), matrix_trace_form(mat(2, ZZ)), canonical_map(ZZ, QQ)),
        (sl(2, QQ), normalized_sl2_form(QQ, sl(2, QQ)),
         canonical_map(QQ, QuadExt(QQ, 2))),
        (mat(2, QQ), matrix_trace_form(mat(2, QQ)),
         canonical_map(QQ, QuadExt(QQ, 2))),
    ]
    for alg, beta, al in cases:
        BS = base_change_algebra(alg, al)
        betaS = beta.base_change(al, BS)
        induced_map(betaS)            # well defined over S
        lhs = [al(v) for v in beta.gram_vector()]
        rhs = betaS.gram_vector()
        assert all(a == b for a, b in zip(lhs, rhs))


def test_verify_ibf_base_change_required_cases():
    cases = [
        (sl(2, ZZ), canonical_map(ZZ, QQ)),
        (sl(2, ZZ), canonical_map(ZZ, PrimeField(2))),
        (mat(2, ZZ), canonical_map(ZZ, QQ)),
        (sl(2, QQ), canonical_map(QQ, Laurent(QQ))),
        (zero_algebra(2, ZZ), canonical_map(ZZ, QQ)),
    ]
    for alg, al in cases:
        cert = verify_ibf_base_change(alg, al)
        assert cert["ok"], cert


def test_verify_ibf_base_change_dimensions():
    cert = verify_ibf_base_change(sl(2, ZZ), canonical_map(ZZ, PrimeField(2)))
    assert cert["right_direct"]["dimension"] == 4
    cert = verify_ibf_base_change(sl(2, ZZ), canonical_map(ZZ, QQ))
    assert cert["right_direct"]["dimension"] == 1


def test_functor_descent_trivial_cocycle():
    g = QuadGalois(QQ, 2)
    s = sl(2, QQ)
    tf = twist(s, g, Cocycle.trivial(g, 3))
    cert = verify_functor_descent(tf)
    assert cert["ok"] and cert["twist_rank"] == cert["descended_rank"] == 1


def test_functor_descent_quaternion_sl2(sl2_quaternion_twist):
    cert = verify_functor_descent(sl2_quaternion_twist)
    assert cert["ok"]
    assert cert["twist_rank"] == 1 and cert["descended_rank"] == 1


def test_functor_descent_quaternion_mat2():
    g = QuadGalois(QQ, 2)
    tf = twist(mat(2, QQ), g, quaternion_cocycle_mat2(g))
    cert = verify_functor_descent(tf)
    assert cert["ok"] and cert["twist_rank"] == 1


def test_principle_descends_along_valid_twists(sl2_quaternion_twist):
    # source principle (Killing = 4*gamma over Q) passes, so it must pass
    # for the descended form on the twist
    s = sl(2, QQ)
    k = killing_form(s)
    assert check_ibf_principle(s, k)["holds"]
    kB = descend_form(k, sl2_quaternion_twist)
    assert check_ibf_principle(sl2_quaternion_twist.algebra, kB)["holds"]

    g = QuadGalois(QQ, 2)
    m = mat(2, QQ)
    tr = matrix_trace_form(m)
    assert check_ibf_principle(m, tr)["holds"]
    tfm = twist(m, g, quaternion_cocycle_mat2(g))
    trB = descend_form(tr, tfm)
    assert check_ibf_principle(tfm.algebra, trB)["holds"]
