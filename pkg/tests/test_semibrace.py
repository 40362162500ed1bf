import numpy as np
import pytest
from hypothesis import given, strategies as st

from affine_lab import families
from affine_lab.affine import AffineStructure
from affine_lab.enumeration import enumerate_structures
from affine_lab.errors import AxiomError, InputError
from affine_lab.groups import make_cyclic, make_dihedral, make_symmetric, parse_group_spec, relabel
from affine_lab.semibrace import (SemiBrace, additive_report, almost_trivial_skew_brace,
                                  biskew_dual_affine, from_affine, is_biskew, isomorphic,
                                  lambda_rho, opposite, swapped, to_affine, trivial_skew_brace,
                                  verify_semibrace)

SPECS = ["cyclic:4", "klein", "cyclic:6", "symmetric:3"]


def _loop_semibrace_ok(B):
    t, add, inv, n = B.mul.table, B.add, B.mul.inverse, B.order
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if add[add[a, b], c] != add[a, add[b, c]]:
                    return False
                # a o (b + c) == a o b + a o (a^- + c)
                if t[a, add[b, c]] != add[t[a, b], t[a, add[inv[a], c]]]:
                    return False
    return True


@pytest.mark.parametrize("spec", SPECS)
def test_round_trip_over_all_structures(spec):
    for A in enumerate_structures(parse_group_spec(spec), "all"):
        B = from_affine(A)
        assert _loop_semibrace_ok(B)
        assert to_affine(B) == A
        assert B.flags.left_cancellative == A.flags.cancellative
        assert B.flags.skew == A.flags.groupal


def test_inverse_translation_gives_right_projection():
    A = families.inverse_translation(make_cyclic(5))
    B = from_affine(A)
    assert (B.add == np.arange(5)[None, :]).all()
    assert B.flags.left_cancellative and not B.flags.skew


def test_constant_endomorphism_flags():
    S3 = make_symmetric(3)
    B = from_affine(families.constant_endomorphism(S3, families.parity_projection()))
    assert B.flags.semibrace and not B.flags.left_cancellative
    B = from_affine(families.constant_endomorphism(S3, np.arange(6)))
    assert B.flags.left_cancellative


def test_lambda_rho_properties_follow_flags():
    for spec in SPECS:
        for A in enumerate_structures(parse_group_spec(spec), "all"):
            lr = lambda_rho(from_affine(A))
            assert lr.consistent, (spec, lr.properties)


def test_verify_rejects_non_associative_sum():
    G = make_cyclic(3)
    add = np.array([[0, 1, 2], [1, 1, 0], [2, 0, 2]])
    with pytest.raises(AxiomError):
        verify_semibrace(G, add)
    with pytest.raises(InputError):
        SemiBrace(G, [[0, 1], [1, 0]])


def test_trivial_and_almost_trivial():
    S3 = make_symmetric(3)
    T = trivial_skew_brace(S3)
    assert T.flags.skew and not T.flags.brace
    assert (T.lam == np.arange(6)[None, :]).all()
    AT = almost_trivial_skew_brace(S3)
    assert AT.flags.skew
    assert opposite(T) == AT


def test_opposite_of_sign_flip_is_parity_twist():
    for m in (4, 6, 8):
        assert opposite(from_affine(families.sign_flip(m))) == from_affine(families.parity_twist(m))


def test_biskew_dual_and_swap():
    B = from_affine(families.conjugation(make_symmetric(3), np.arange(6)))
    assert is_biskew(B)
    psi = biskew_dual_affine(B)
    assert psi.flags.groupal
    sw = swapped(B)
    assert np.array_equal(sw.add, B.mul.table)


def test_parity_twist_biskew_boundary():
    assert is_biskew(from_affine(families.parity_twist(4)))
    assert not is_biskew(from_affine(families.parity_twist(6)))


def test_skew_only_operations_reject_non_skew():
    B = from_affine(families.inverse_translation(make_cyclic(3)))
    with pytest.raises(InputError):
        opposite(B)


def test_isomorphism_search():
    A = families.sign_flip(6)
    B = from_affine(A)
    assert isomorphic(B, B) is not None
    assert isomorphic(B, trivial_skew_brace(B.mul)) is None
    assert additive_report(B).is_group and not additive_report(B).abelian
    assert additive_report(B).iso_type is not None


def test_sign_flip_additive_group_is_dihedral():
    from affine_lab.semibrace import additive_isomorphic_to
    for m in (4, 6, 8):
        assert additive_isomorphic_to(from_affine(families.sign_flip(m)), make_dihedral(m // 2))


@given(st.sampled_from(SPECS), st.data())
def test_isomorphism_is_invariant_under_relabel(spec, data):
    G = parse_group_spec(spec)
    A = data.draw(st.sampled_from(enumerate_structures(G, "all")))
    B = from_affine(A)
    perm = [0] + list(data.draw(st.permutations(range(1, G.order))))
    perm = np.array(perm)
    H = relabel(G, perm)
    inv = np.argsort(perm)
    sigma = perm[A.sigma[inv][:, inv]]
    B2 = from_affine(AffineStructure(H, sigma))
    f = isomorphic(B, B2)
    assert f is not None
    assert np.array_equal(f[B.add], B2.add[f[:, None], f[None, :]])
