import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from affine_lab import families
from affine_lab.catalog import catalog_systems, mutated_system, power_negation_system, product_iff
from affine_lab.enumeration import enumerate_structures
from affine_lab.errors import AxiomError, InputError
from affine_lab.groups import (direct_product, is_isomorphic, make_cyclic, make_dihedral,
                               make_symmetric, parse_group_spec)
from affine_lab.products import (MatchedSystem, ProductConditionError, ZappaSystem,
                                 affine_to_zappa, bowtie_group, check_bowtie_zappa_iso,
                                 check_product_conditions, compare_constructions,
                                 compatibility_check, confronto_check, matched_product_semibrace,
                                 mps_checks, product_affine, product_sigma, trivial_system,
                                 verify_mps, verify_zappa, zappa_checks, zappa_to_affine)
from affine_lab.semibrace import from_affine, trivial_skew_brace


def inversion_system(n):
    """C_n with C2 acting by inversion, beta trivial."""
    k = np.arange(n)
    return MatchedSystem(make_cyclic(n), make_cyclic(2), np.array([k, (-k) % n]),
                         np.tile(np.arange(2), (n, 1)), name=f"C{n}><C2")


def test_zappa_with_trivial_actions_is_direct_product():
    C2, C3 = make_cyclic(2), make_cyclic(3)
    Z = ZappaSystem(C2, C3, np.tile(np.arange(2), (3, 1)), np.tile(np.arange(3), (2, 1)))
    G = verify_zappa(Z)
    assert is_isomorphic(G, direct_product(C2, C3))


def test_zappa_mutated_eta_fails_Z1():
    C2, C3 = make_cyclic(2), make_cyclic(3)
    eta = np.tile(np.arange(2), (3, 1))
    eta[1] = [1, 0]
    Z = ZappaSystem(C2, C3, eta, np.tile(np.arange(3), (2, 1)))
    checks = zappa_checks(Z)
    assert not checks["Z1_left"] or not checks["Z1_right"]
    with pytest.raises(AxiomError):
        verify_zappa(Z)


def test_zappa_shape_error():
    C2 = make_cyclic(2)
    with pytest.raises(InputError):
        ZappaSystem(C2, C2, np.zeros((3, 2)), np.zeros((2, 2)))


def test_trivial_structure_gives_trivial_actions():
    G = make_cyclic(4)
    Z = affine_to_zappa(families.trivial_structure(G))
    assert (Z.eta == np.arange(4)[None, :]).all()
    assert (Z.delta == np.arange(4)[None, :]).all()


def test_compatibility_fails_for_arbitrary_actions():
    S3 = make_symmetric(3)
    eye = np.tile(np.arange(6), (6, 1))
    assert not compatibility_check(ZappaSystem(S3, S3, eye, eye))


@pytest.mark.parametrize("spec", ["cyclic:2", "cyclic:3", "cyclic:4", "klein", "cyclic:5",
                                  "cyclic:6", "symmetric:3"])
def test_zappa_round_trip(spec):
    for A in enumerate_structures(parse_group_spec(spec), "cancellative"):
        Z = affine_to_zappa(A)
        assert (verify_zappa(Z) is not None) == A.flags.groupal
        assert zappa_to_affine(Z) == A


def test_affine_to_zappa_needs_cancellative():
    A = families.constant_endomorphism(make_symmetric(3), families.parity_projection())
    with pytest.raises(InputError):
        affine_to_zappa(A)


def test_bowtie_trivial_is_direct_product():
    S, T = make_cyclic(3), make_cyclic(4)
    G = bowtie_group(trivial_system(S, T))
    D = direct_product(S, T)
    assert np.array_equal(G.table, D.table)


def test_power_negation_system():
    M = power_negation_system()
    assert verify_mps(M)
    assert check_bowtie_zappa_iso(M)
    assert is_isomorphic(bowtie_group(M), make_dihedral(6))


def test_mps_rejects_non_bijective_action():
    C2 = make_cyclic(2)
    M = MatchedSystem(C2, C2, np.zeros((2, 2), dtype=int), np.tile(np.arange(2), (2, 1)))
    assert not mps_checks(M)["bijective_actions"]
    assert not verify_mps(M)


@pytest.mark.parametrize("name,M,AS,AT", catalog_systems(), ids=[c[0] for c in catalog_systems()])
def test_iff_on_catalog_systems(name, M, AS, AT):
    assert product_iff(M, AS, AT) == (True, True)


def test_mutated_system_fails_both_sides():
    M, AS, AT = mutated_system()
    assert product_iff(M, AS, AT) == (False, False)
    report = check_product_conditions(M, AS, AT)
    assert not report.checks["II_alpha"]
    with pytest.raises(ProductConditionError):
        product_affine(M, AS, AT)


@pytest.mark.parametrize("n", [3, 4])
def test_iff_over_enumerated_cancellative_pairs(n):
    M = inversion_system(n)
    G = bowtie_group(M)
    seen = set()
    for AS in enumerate_structures(M.S, "cancellative"):
        for AT in enumerate_structures(M.T, "cancellative"):
            ok = bool(check_product_conditions(M, AS, AT))
            valid = product_sigma(M, AS, AT, G).flags.valid
            assert ok == valid
            seen.add(ok)
    assert seen == {True, False}


def test_product_restricted_to_factors_is_componentwise():
    M = power_negation_system()
    AS, AT = families.sign_flip(6), families.trivial_structure(M.T)
    B = from_affine(product_affine(M, AS, AT))
    SB, TB = from_affine(AS), from_affine(AT)
    m = M.T.order
    for a, b in itertools.product(range(6), repeat=2):
        assert B.add[a * m, b * m] == SB.add[a, b] * m
        assert B.mul.table[a * m, b * m] == M.S.table[a, b] * m
    for u, v in itertools.product(range(m), repeat=2):
        assert B.add[u, v] == TB.add[u, v]
        assert B.mul.table[u, v] == M.T.table[u, v]


def test_confronto_both_sides_agree_on_v4():
    V4 = parse_group_spec("klein")
    C2 = make_cyclic(2)
    swap = np.array([0, 2, 1, 3])
    M = MatchedSystem(V4, C2, np.array([np.arange(4), swap]), np.tile(np.arange(2), (4, 1)))
    assert verify_mps(M)
    agree = set()
    for A in enumerate_structures(V4, "cancellative"):
        rep = confronto_check(M, from_affine(A), trivial_skew_brace(C2))
        assert rep.mps_old == rep.actions_in_aut_add
        agree.add(rep.mps_old)
    assert agree == {True, False}


def test_matched_product_of_trivial_braces():
    M = power_negation_system()
    Q = matched_product_semibrace(M, trivial_skew_brace(M.S), trivial_skew_brace(M.T))
    assert Q.flags.brace
    assert is_isomorphic(Q.additive_group, direct_product(make_cyclic(6), make_cyclic(2)))


def test_compare_reports_failure_instead_of_raising():
    M, AS, AT = mutated_system()
    cmp = compare_constructions(M, AS, AT)
    assert cmp.failure and not cmp.isomorphic


@given(st.sampled_from([3, 4, 5]), st.data())
def test_bowtie_zappa_iso_property(n, data):
    M = inversion_system(n)
    assert check_bowtie_zappa_iso(M)
    G = bowtie_group(M)
    x, y = data.draw(st.integers(0, G.order - 1)), data.draw(st.integers(0, G.order - 1))
    assert G.table[x, G.inverse[x]] == G.identity
    assert G.table[G.table[x, y], G.inverse[y]] == x
