import pytest
from hypothesis import given, settings, strategies as st

from marksmith import kernels
from marksmith.catalogue import by_name, parse_group
from marksmith.groups import (
    FiniteGroup,
    GroupError,
    Perm,
    center,
    centralizer,
    direct_product,
    is_normal,
    normalizer,
    right_cosets,
)


def test_perm_cycles_roundtrip():
    p = Perm.from_cycles("(1,2)(3,4,5)", 5)
    assert p.cycles() == "(1,2)(3,4,5)"
    assert (p * p.inverse()) == Perm.identity(5)


def test_perm_rejects_bad_input():
    with pytest.raises(GroupError):
        Perm.from_cycles("(1,1)", 3)
    with pytest.raises(GroupError):
        Perm.from_cycles("(1,7)", 3)


@pytest.mark.parametrize("name,order", [
    ("C1", 1), ("C6", 6), ("V4", 4), ("S3", 6), ("D8", 8), ("Q8", 8), ("A4", 12), ("S4", 24), ("A5", 60),
])
def test_catalogue_orders(name, order):
    assert by_name(name).order == order


def test_explicit_generators():
    G = parse_group("perm:4:(1,2,3,4);(1,3)")
    assert G.order == 8
    with pytest.raises(GroupError):
        parse_group("perm:x:(1,2)")
    with pytest.raises(GroupError):
        parse_group("Z7")


def test_right_action_conventions(S3):
    t, c, inv = S3.table, S3.conj, S3.inverse
    e = S3.elements
    for a in range(6):
        for b in range(6):
            # composition applies the left factor first
            assert e[int(t[a, b])] == e[a] * e[b]
            assert int(c[a, b]) == int(t[int(t[int(inv[a]), b]), a])


def test_normalizers_and_centre():
    S4 = by_name("S4")
    assert center(S4) == S4.trivial_mask
    D8 = by_name("D8")
    assert center(D8).bit_count() == 2
    Z = center(D8)
    assert centralizer(D8, Z) == D8.all_mask
    assert normalizer(D8, Z) == D8.all_mask
    assert is_normal(D8, Z, D8.all_mask)


def test_right_cosets_partition(S3):
    H = S3.generate([next(i for i in range(6) if S3.element_orders[i] == 2)])
    reps = right_cosets(S3, S3.all_mask, H)
    assert len(reps) == 3
    union = 0
    for _, coset in reps:
        assert union & coset == 0
        union |= coset
    assert union == S3.all_mask


def test_product_projections(S3):
    prod, e1, e2 = direct_product(S3, S3)
    assert prod.order == 36
    assert prod.project(prod.all_mask, 0) == S3.all_mask
    a = prod.pair(2, 3)
    assert prod.split(a) == (2, 3)
    assert prod.kernel(e1.image(S3.all_mask), 0) == S3.all_mask


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=2))
def test_backends_agree_on_subgroups(perms):
    from marksmith.lattice import all_subgroups
    from marksmith.marks import brute_force_tom

    gens = [Perm(tuple(p)) for p in perms]
    saved = kernels.backend
    results = []
    try:
        for name in kernels.available():
            kernels.use(name)
            G = FiniteGroup(gens, degree=5)
            if G.order > 24:
                return
            results.append((all_subgroups(G), brute_force_tom(G).as_lists()))
    finally:
        kernels.backend = saved
    assert all(r == results[0] for r in results)
