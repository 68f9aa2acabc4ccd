import itertools

import pytest
from hypothesis import given, settings, strategies as st

from marksmith.catalogue import by_name
from marksmith.groups import BoundExceeded, FiniteGroup, Perm
from marksmith.lattice import (
    all_subgroups,
    automorphisms,
    find_isomorphism,
    identify,
    isotype,
    normal_subgroups_of,
    quotient,
    subgroup_class_of,
    subgroup_classes,
)


def subgroups_by_pairs(G: FiniteGroup) -> set[int]:
    """Independent enumeration: every subgroup generated by at most two elements, then joins to a fixpoint."""
    found = {G.generate([a, b]) for a, b in itertools.combinations_with_replacement(range(G.order), 2)}
    found.add(G.trivial_mask)
    changed = True
    while changed:
        changed = False
        for A, B in itertools.combinations(list(found), 2):
            J = G.join(A, B)
            if J not in found:
                found.add(J)
                changed = True
    return found


# number of subgroups and of conjugacy classes of subgroups
KNOWN = {"C6": (4, 4), "V4": (5, 5), "S3": (6, 4), "D8": (10, 8), "Q8": (6, 6), "A4": (10, 5),
         "S4": (30, 11), "A5": (59, 9)}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_subgroup_counts(name):
    G = by_name(name)
    n, c = KNOWN[name]
    assert len(all_subgroups(G)) == n
    assert len(subgroup_classes(G)) == c


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "S4", "C6"])
def test_enumeration_matches_pair_oracle(name):
    G = by_name(name)
    assert set(all_subgroups(G)) == subgroups_by_pairs(G)


def test_classes_partition_lattice():
    G = by_name("S4")
    members = [m for c in subgroup_classes(G) for m in c.members]
    assert sorted(members) == sorted(all_subgroups(G))
    for H in all_subgroups(G):
        idx, g = subgroup_class_of(G, H)
        assert G.conjugate(subgroup_classes(G)[idx].representative, g) == H


def test_s3_class_labels(S3):
    assert [c.label for c in subgroup_classes(S3)] == ["1", "2", "3", "G"]


def test_bound(monkeypatch):
    monkeypatch.setenv("MARKSMITH_MAX_ORDER", "10")
    with pytest.raises(BoundExceeded):
        all_subgroups(by_name("A4"))


@pytest.mark.parametrize("name,order", [("C1", 1), ("C3", 2), ("V4", 6), ("S3", 6), ("D8", 8), ("Q8", 24),
                                        ("A4", 24), ("S4", 24), ("A5", 120)])
def test_automorphism_group_orders(name, order):
    assert automorphisms(by_name(name)).order == order


def test_out_transversal():
    assert len(automorphisms(by_name("S3")).out_transversal) == 1
    assert len(automorphisms(by_name("C3")).out_transversal) == 2


def test_quotient_identification(A5):
    # A4 / V4 is cyclic of order three
    A4 = next(c.representative for c in subgroup_classes(A5) if c.order == 12)
    V = next(K for K in normal_subgroups_of(A5, A4) if K.bit_count() == 4)
    t, iso = isotype(quotient(A5, A4, V).group)
    assert t.name == "C3"


def test_identify_distinguishes_order_eight():
    assert identify(by_name("D8")) != identify(by_name("Q8"))
    assert find_isomorphism(by_name("D8"), by_name("Q8")) is None


@settings(max_examples=20, deadline=None)
@given(st.lists(st.permutations(list(range(4))), min_size=1, max_size=2))
def test_random_subgroups_of_s4_are_closed(perms):
    G = by_name("S4")
    H = G.subgroup([Perm(tuple(p)) for p in perms])
    assert H in set(all_subgroups(G))
    assert G.is_subgroup(H)
