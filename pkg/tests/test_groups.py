import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from affine_lab.errors import AxiomError, InputError
from affine_lab.families import c2_s3_parity_endomorphism, c2_times_s3, parity_projection
from affine_lab.groups import (FiniteGroup, GroupHom, automorphisms, check_group, compose,
                               direct_product, find_isomorphism, identify, is_bijective,
                               is_idempotent_endomorphism, is_isomorphic, make_abelian,
                               make_cyclic, make_dihedral, make_quaternion, make_symmetric,
                               parse_group_spec, relabel, verify_group)


def brute_automorphism_count(G):
    """Independent count over every permutation of the carrier."""
    t = G.table
    count = 0
    for p in itertools.permutations(range(G.order)):
        p = np.array(p)
        if np.array_equal(p[t], t[p[:, None], p[None, :]]):
            count += 1
    return count


def test_cyclic_small_cases():
    assert make_cyclic(1).table.tolist() == [[0]]
    assert make_cyclic(2).table.tolist() == [[0, 1], [1, 0]]
    C6 = make_cyclic(6)
    assert C6.order == 6 and C6.inverse[2] == 4
    with pytest.raises(InputError):
        make_cyclic(0)


def test_dihedral():
    assert is_isomorphic(make_dihedral(1), make_cyclic(2))
    D3 = make_dihedral(3)
    assert D3.order == 6 and not D3.is_abelian
    D4 = make_dihedral(4)
    assert D4.order == 8 and len(D4.center()) == 2
    with pytest.raises(InputError):
        make_dihedral(0)


def test_symmetric():
    assert make_symmetric(1).order == 1
    S3 = make_symmetric(3)
    assert S3.order == 6 and not S3.is_abelian
    assert is_isomorphic(S3, make_dihedral(3))
    with pytest.raises(InputError):
        make_symmetric(6)


def test_direct_products():
    H = make_symmetric(3)
    assert is_isomorphic(direct_product(make_cyclic(1), H), H)
    G = c2_times_s3()
    assert G.order == 12 and is_isomorphic(G, make_dihedral(6))
    V = direct_product(make_cyclic(2), make_cyclic(2))
    assert set(V.element_orders.tolist()) == {1, 2}
    P = direct_product(make_cyclic(3), make_symmetric(3))
    for g in range(3):
        for h in range(6):
            assert P.inverse[g * 6 + h] == ((-g) % 3) * 6 + H.inverse[h]


def test_verify_group_witnesses():
    assert check_group(make_cyclic(4).table)
    bad = check_group([[1, 1], [1, 0]])
    assert bad.name == "identity" and not bad
    left_zero = check_group([[0, 0], [1, 1]])
    assert left_zero.name == "identity"
    nonassoc = check_group([[0, 1, 2], [1, 0, 0], [2, 0, 0]])
    assert not nonassoc
    with pytest.raises(AxiomError):
        verify_group([[0, 1], [1, 1]])


@pytest.mark.parametrize("spec,count", [("cyclic:2", 1), ("cyclic:6", 2), ("symmetric:3", 6),
                                        ("klein", 6), ("cyclic:5", 4), ("quaternion", 24)])
def test_automorphism_counts(spec, count):
    G = parse_group_spec(spec)
    auts = automorphisms(G)
    assert len(auts) == count
    if G.order <= 6:
        assert brute_automorphism_count(G) == count


@pytest.mark.parametrize("spec", ["cyclic:4", "klein", "symmetric:3", "dihedral:4", "quaternion",
                                  "dihedral:6"])
def test_automorphisms_form_a_group(spec):
    G = parse_group_spec(spec)
    auts = {a.tobytes() for a in automorphisms(G)}
    ident = np.arange(G.order)
    assert ident.tobytes() in auts
    arr = [np.frombuffer(a, dtype=np.int64) for a in auts]
    for f in arr:
        assert np.argsort(f).tobytes() in auts
        for g in arr:
            assert compose(f, g).tobytes() in auts


def test_automorphisms_sorted_and_bounded():
    auts = automorphisms(make_symmetric(3))
    assert [a.tolist() for a in auts] == sorted(a.tolist() for a in auts)
    with pytest.raises(InputError):
        automorphisms(make_cyclic(17))


def test_idempotent_endomorphisms():
    G = c2_times_s3()
    f = c2_s3_parity_endomorphism()
    assert is_idempotent_endomorphism(G, f)
    assert is_idempotent_endomorphism(G, np.zeros(12, dtype=np.int64))
    assert is_idempotent_endomorphism(make_symmetric(3), parity_projection())
    f_id = np.arange(12)
    assert (compose(f_id, f) == f).all()


def test_identify_library():
    assert identify(make_symmetric(3)) == "D3"
    assert identify(make_abelian([2, 2])) == "C2xC2"
    assert identify(make_quaternion()) == "Q8"
    assert identify(make_cyclic(8)) == "C8"


def test_parse_errors():
    with pytest.raises(InputError):
        parse_group_spec("bogus:3")
    with pytest.raises(InputError):
        parse_group_spec("cyclic:x")


def test_group_hom_validation():
    C4, C2 = make_cyclic(4), make_cyclic(2)
    GroupHom(C4, C2, np.array([0, 1, 0, 1]))
    with pytest.raises(InputError):
        GroupHom(C4, C2, np.array([0, 1, 1, 1]))


@given(st.sampled_from(["cyclic:6", "symmetric:3", "klein", "dihedral:4", "abelian:2,4"]),
       st.randoms(use_true_random=False))
def test_relabel_preserves_isomorphism_type(spec, rnd):
    G = parse_group_spec(spec)
    perm = [0] + rnd.sample(range(1, G.order), G.order - 1)
    H = relabel(G, perm)
    assert check_group(H.table)
    f = find_isomorphism(G, H)
    assert f is not None and is_bijective(f)
    assert H.profile() == G.profile()
    assert len(automorphisms(H)) == len(automorphisms(G))


@given(st.integers(1, 10), st.integers(1, 10), st.integers(1, 10))
def test_cyclic_associativity(m, a, b):
    G = make_cyclic(m)
    a, b = a % m, b % m
    c = (a + b) % m
    assert G.table[G.table[a, b], c] == G.table[a, G.table[b, c]]
    assert G.table[a, G.inverse[a]] == G.identity


def test_json_roundtrip_group():
    from affine_lab.groups import group_from_json
    G = make_dihedral(4)
    H = group_from_json(G.to_json())
    assert H == G and H.labels == G.labels
    with pytest.raises(InputError):
        group_from_json({"order": 3, "table": [[0, 1], [1, 0]]})
    assert isinstance(H, FiniteGroup)
