import itertools
import os

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from affine_lab import families
from affine_lab.affine import AffineStructure, check_affine_identity, check_anti_hom
from affine_lab.enumeration import (KINDS, census, enumerate_naive, enumerate_structures,
                                    idempotent_maps)
from affine_lab.errors import InputError
from affine_lab.groups import make_cyclic, parse_group_spec, relabel

# frozen from the generator search, cross-checked against the naive search up to order 4
COUNTS = {
    "cyclic:1": (1, 1, 1, 1), "cyclic:2": (3, 2, 1, 1), "cyclic:3": (3, 2, 1, 1),
    "cyclic:4": (6, 3, 2, 2), "klein": (24, 11, 4, 4), "cyclic:5": (3, 2, 1, 1),
    "cyclic:6": (19, 6, 3, 1), "symmetric:3": (37, 12, 5, 3), "cyclic:7": (3, 2, 1, 1),
}
SLOW_COUNTS = {
    "cyclic:8": (24, 7, 6, 2), "dihedral:4": (192, 55, 30, 22), "quaternion": (80, 23, 22, 14),
    "abelian:2,4": (136, 39, 26, 18), "abelian:2,2,2": (808, 247, 106, 50),
}
CLASS_COUNTS = {
    "cyclic:2": (3, 2, 1, 1), "cyclic:3": (3, 2, 1, 1), "cyclic:4": (5, 3, 2, 2),
    "klein": (7, 4, 2, 2), "cyclic:6": (16, 6, 3, 1), "symmetric:3": (14, 6, 3, 1),
}


def _literal(G):
    """Every n^(n*n) table, tested with the scalar checkers."""
    n = G.order
    found = []
    for flat in itertools.product(range(n), repeat=n * n):
        A = AffineStructure(G, np.array(flat).reshape(n, n))
        if check_anti_hom(A) and check_affine_identity(A):
            found.append(A.sigma.tobytes())
    return sorted(found)


@pytest.mark.parametrize("n", [2, 3])
def test_literal_brute_force(n):
    G = make_cyclic(n)
    assert _literal(G) == sorted(A.sigma.tobytes() for A in enumerate_structures(G, "all"))


@pytest.mark.parametrize("spec", ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "klein"])
@pytest.mark.parametrize("kind", KINDS)
def test_generator_search_matches_naive(spec, kind):
    G = parse_group_spec(spec)
    fast = [A.sigma.tobytes() for A in enumerate_structures(G, kind)]
    slow = [A.sigma.tobytes() for A in enumerate_naive(G, kind)]
    assert fast == slow


@pytest.mark.parametrize("spec", list(COUNTS))
def test_counts(spec):
    G = parse_group_spec(spec)
    assert tuple(len(enumerate_structures(G, k)) for k in KINDS) == COUNTS[spec]


@pytest.mark.slow
@pytest.mark.parametrize("spec", list(SLOW_COUNTS))
def test_counts_order_8(spec):
    G = parse_group_spec(spec)
    assert tuple(len(enumerate_structures(G, k)) for k in KINDS) == SLOW_COUNTS[spec]


def test_every_enumerated_structure_is_valid_and_kind_consistent():
    G = parse_group_spec("symmetric:3")
    every = {A.sigma.tobytes(): A for A in enumerate_structures(G, "all")}
    for kind in KINDS[1:]:
        for A in enumerate_structures(G, kind):
            assert A.sigma.tobytes() in every
            assert getattr(A.flags, kind)


def test_named_families_are_found():
    C4 = make_cyclic(4)
    abelian = {A.sigma.tobytes() for A in enumerate_structures(C4, "abelian")}
    assert families.sign_flip(4).sigma.tobytes() in abelian
    groupal = {A.sigma.tobytes() for A in enumerate_structures(make_cyclic(6), "groupal")}
    for A in (families.trivial_structure(make_cyclic(6)), families.sign_flip(6),
              families.parity_twist(6)):
        assert A.sigma.tobytes() in groupal


def test_idempotent_count():
    # number of idempotent self-maps of an n-set
    assert [len(idempotent_maps(n)) for n in range(1, 6)] == [1, 3, 10, 41, 196]


def test_bounds_and_kind():
    with pytest.raises(InputError):
        enumerate_structures(make_cyclic(9))
    with pytest.raises(InputError):
        enumerate_naive(make_cyclic(5))
    with pytest.raises(InputError):
        enumerate_structures(make_cyclic(3), "braces")


def test_parallel_matches_serial():
    G = parse_group_spec("symmetric:3")
    a = [A.sigma.tobytes() for A in enumerate_structures(G, "all", jobs=1)]
    b = [A.sigma.tobytes() for A in enumerate_structures(G, "all", jobs=2)]
    assert a == b


@pytest.mark.parametrize("spec", list(CLASS_COUNTS))
def test_census_class_counts(spec):
    G = parse_group_spec(spec)
    got = []
    for k in KINDS:
        c = census(G, k)
        assert sum(cl.orbit_size for cl in c.classes) == c.structures
        got.append(len(c.classes))
    assert tuple(got) == CLASS_COUNTS[spec]


def test_census_groupal_classes_are_skew_braces():
    c = census(parse_group_spec("cyclic:6"), "groupal")
    assert all(cl.semibrace["skew"] for cl in c.classes)
    assert all(cl.solution["ybe"] and cl.solution["bijective"] for cl in c.classes)


@settings(max_examples=10)
@given(st.sampled_from(["cyclic:4", "klein", "cyclic:6", "symmetric:3"]), st.data())
def test_census_invariant_under_relabel(spec, data):
    G = parse_group_spec(spec)
    perm = np.array([0] + list(data.draw(st.permutations(range(1, G.order)))))
    H = relabel(G, perm)
    for kind in ("all", "groupal"):
        a, b = census(G, kind), census(H, kind)
        assert a.structures == b.structures
        assert sorted(c.orbit_size for c in a.classes) == sorted(c.orbit_size for c in b.classes)


def test_census_cache_round_trip(tmp_path, monkeypatch):
    G = parse_group_spec("cyclic:6")
    first = census(G, "cancellative", cache=tmp_path)
    files = os.listdir(tmp_path)
    assert len(files) == 1 and files[0].endswith("-cancellative-v1.json")
    monkeypatch.setattr("affine_lab.enumeration.enumerate_structures",
                        lambda *a, **k: pytest.fail("cache not used"))
    second = census(G, "cancellative", cache=tmp_path)
    assert first.to_dict() == second.to_dict()
    monkeypatch.setenv("AFFINE_LAB_CACHE", str(tmp_path))
    assert census(G, "cancellative").to_dict() == first.to_dict()
