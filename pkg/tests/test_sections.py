import random

import pytest
from hypothesis import given, settings, strategies as st

import golden
from marksmith.catalogue import by_name
from marksmith.groups import GroupError
from marksmith.lattice import subgroup_classes
from marksmith.sections import (
    Mode,
    all_sections,
    butterfly_meet,
    cim_sections,
    decompose,
    decompose_prime,
    join,
    leq,
    make_section,
    meet,
    section_class_of,
    section_classes,
)

GROUPS = ["S3", "D8", "A4", "C6"]


def test_s3_has_eight_classes(S3):
    classes = section_classes(S3)
    assert len(classes) == 8
    assert [c.label for c in classes] == ["(1,1)", "(2,2)", "(3,3)", "(G,G)", "(2,1)", "(G,3)", "(3,1)", "(G,1)"]
    assert sum(c.size for c in classes) == len(all_sections(S3))


@pytest.mark.parametrize("name,mode", [
    ("SECTIONS_P", Mode.P), ("SECTIONS_K", Mode.K), ("SECTIONS_PK", Mode.PK),
    ("SECTIONS_FULL", Mode.FULL), ("SECTIONS_PRIME", Mode.PRIME),
])
def test_s3_matrices(S3, name, mode):
    expected = golden.labelled(getattr(golden, name))
    assert cim_sections(S3, mode).permuted(expected.rows) == expected


@pytest.mark.parametrize("name", GROUPS)
def test_product_identities(name):
    G = by_name(name)
    K, PK, P, GP = (cim_sections(G, m) for m in (Mode.K, Mode.PK, Mode.P, Mode.GEQ_P))
    assert cim_sections(G, Mode.FULL) == K @ PK @ P
    assert cim_sections(G, Mode.PRIME) == K @ PK @ GP


@pytest.mark.parametrize("name", GROUPS)
def test_prime_order_is_triangular_by_size(name):
    G = by_name(name)
    assert cim_sections(G, Mode.PRIME).is_lower_triangular()


@pytest.mark.parametrize("name", ["S3", "A4"])
def test_transversal_independence(name):
    G = by_name(name)
    rng = random.Random(7)
    reps = [rng.choice(c.members) for c in section_classes(G)]
    for mode in Mode:
        assert cim_sections(G, mode, reps) == cim_sections(G, mode)


def test_make_section_rejects_non_normal(S3):
    two = next(c.representative for c in subgroup_classes(S3) if c.order == 2)
    assert make_section(S3, two, S3.trivial_mask).size == 2
    with pytest.raises(GroupError):
        make_section(S3, S3.all_mask, two)


def test_v4_prime_order_has_no_unique_infimum(V4):
    """Two sections (G, 2_i) have two maximal common lower bounds in the primed order."""
    secs = all_sections(V4)
    G = V4.all_mask
    twos = [s.P for s in secs if s.P.bit_count() == 2 and s.K.bit_count() == 1]
    a = make_section(V4, G, twos[1])
    b = make_section(V4, G, twos[2])
    lower = [s for s in secs if leq(s, a, Mode.PRIME) and leq(s, b, Mode.PRIME)]
    maximal = [s for s in lower if not any(t != s and leq(s, t, Mode.PRIME) for t in lower)]
    assert len(maximal) > 1
    assert make_section(V4, twos[0], V4.trivial_mask) in maximal
    assert make_section(V4, G, G) in maximal


def _section_pairs(name, mode):
    G = by_name(name)
    secs = all_sections(G)
    return G, [(a, b) for a in secs for b in secs if leq(a, b, mode)]


@pytest.mark.parametrize("name", GROUPS)
def test_decompose_is_unique_factorisation(name):
    G, pairs = _section_pairs(name, Mode.FULL)
    secs = all_sections(G)
    for a, b in pairs:
        lo, hi = decompose(a, b)
        assert leq(a, lo, Mode.P) and leq(lo, hi, Mode.PK) and leq(hi, b, Mode.K)
        # uniqueness: no other middle pair works
        above = [x for x in secs if leq(a, x, Mode.P)]
        below = [y for y in secs if leq(y, b, Mode.K)]
        assert [(x, y) for x in above for y in below if leq(x, y, Mode.PK)] == [(lo, hi)]


@pytest.mark.parametrize("name", GROUPS)
def test_decompose_prime(name):
    G, pairs = _section_pairs(name, Mode.PRIME)
    for a, b in pairs:
        s2, s1 = decompose_prime(a, b)
        assert leq(s2, a, Mode.P) and leq(s2, s1, Mode.PK) and leq(s1, b, Mode.K)


S4 = by_name("S4")
S4_SECTIONS = all_sections(S4)
sections_s4 = st.integers(0, len(S4_SECTIONS) - 1).map(S4_SECTIONS.__getitem__)


@settings(max_examples=200, deadline=None)
@given(sections_s4, sections_s4, sections_s4)
def test_orders_are_partial_orders(a, b, c):
    for mode in Mode:
        assert leq(a, a, mode)
        if leq(a, b, mode) and leq(b, a, mode):
            assert a == b
        if leq(a, b, mode) and leq(b, c, mode):
            assert leq(a, c, mode)


@settings(max_examples=200, deadline=None)
@given(sections_s4, sections_s4, st.integers(0, 23))
def test_orders_are_conjugation_invariant(a, b, g):
    for mode in Mode:
        assert leq(a, b, mode) == leq(a.conjugate(g), b.conjugate(g), mode)


@settings(max_examples=100, deadline=None)
@given(sections_s4, sections_s4)
def test_meet_and_join_bound(a, b):
    m, j = meet(a, b), join(a, b)
    assert leq(m, a) and leq(m, b) and leq(a, j) and leq(b, j)


@settings(max_examples=100, deadline=None)
@given(sections_s4, sections_s4)
def test_butterfly_meet_quotients_agree(a, b):
    bm = butterfly_meet(a, b)
    assert leq(bm.meet, bm.first, Mode.PK) and leq(bm.meet, bm.second, Mode.PK)
    assert bm.first.size == bm.second.size == bm.meet.size
    # each cross-section is a subquotient of its section
    for part, whole in ((bm.first, a), (bm.second, b)):
        assert part.P & whole.P == part.P and part.K & whole.K == whole.K


def test_section_class_of_roundtrip():
    G = by_name("A4")
    for s in all_sections(G):
        idx, g = section_class_of(s)
        assert section_classes(G)[idx].section.conjugate(g) == s
