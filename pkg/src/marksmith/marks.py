"""Tables of marks: single groups, the factored product construction and the fixed-point oracle."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from marksmith import kernels
from marksmith.groups import FiniteGroup, ProductGroup, normalizer, right_cosets
from marksmith.lattice import all_subgroups, automorphisms, check_bound, subgroup_class_of, subgroup_classes
from marksmith.matrices import LabeledMatrix, block_sum, kron_over_group
from marksmith.morphisms import UMorphism, base_morphism, cim_mor, morphism_classes, out_action
from marksmith.product import (
    conjugate_pair,
    goursat_decompose,
    identify_class,
    pi_mask,
    product_classes,
    product_types,
)
from marksmith.sections import Mode, Section, leq, section_class_of, section_classes

FACTORED_MODES = (Mode.K, Mode.PK, Mode.P, Mode.GEQ_P)


def class_incidence(G: FiniteGroup) -> LabeledMatrix:
    """``A(≤)`` on subgroup classes: entry ``(x, y)`` counts conjugates of ``H_x`` containing ``H_y``."""
    classes = subgroup_classes(G)
    rows = [[sum(1 for m in cx.members if cy.representative & m == cy.representative) for cy in classes]
            for cx in classes]
    return LabeledMatrix.square([c.label for c in classes], rows)


def tom_single(G: FiniteGroup) -> LabeledMatrix:
    """``M(G) = D · A(≤)`` with ``D`` the normalizer indices."""
    classes = subgroup_classes(G)
    D = LabeledMatrix.diagonal([c.label for c in classes],
                               [c.normalizer.bit_count() // c.order for c in classes])
    return D @ class_incidence(G)


def _marks_row(G: FiniteGroup, H: int, cols: list[int]) -> list[int]:
    _, conj, inverse = G.prepared()
    reps = [r for r, _ in right_cosets(G, G.all_mask, H)]
    count = kernels.backend.count_fixed_cosets
    return [count(conj, inverse, reps, G.gens_of(K), H) for K in cols]


def brute_force_tom(G: FiniteGroup, threads: int = 1) -> LabeledMatrix:
    """Marks ``|(G/H)^K|`` counted on the coset spaces, over the subgroup classes of ``G``."""
    check_bound(G)
    classes = subgroup_classes(G)
    reps = [c.representative for c in classes]
    for H in reps:  # warm the generator cache before any threads start
        G.gens_of(H)
    G.prepared()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(lambda H: _marks_row(G, H, reps), reps))
    else:
        rows = [_marks_row(G, H, reps) for H in reps]
    return LabeledMatrix.square([c.label for c in classes], rows)


# -- the factored construction on G1 x G2 ------------------------------------


def _morphism_on(G: FiniteGroup, s: Section) -> UMorphism:
    idx, g = section_class_of(s)
    return base_morphism(section_classes(G)[idx]).conjugate(g)


def _normal_subgroups(G: FiniteGroup, P: int) -> list[int]:
    from marksmith.lattice import normal_subgroups_of

    return normal_subgroups_of(G, P)


def _overgroups_with_normal(G: FiniteGroup, K: int) -> list[int]:
    from marksmith.groups import is_normal

    return [P for P in all_subgroups(G) if P & K == K and is_normal(G, K, P)]


def _fixed_part_subgroups(prod: ProductGroup, pairs) -> list[int]:
    """All ``Π(θ1 α, θ2)`` for the given section pairs and all ``α`` in ``Aut(U)``."""
    G1, G2 = prod.factors
    out = []
    for s1, s2 in pairs:
        th1 = _morphism_on(G1, s1)
        th2 = _morphism_on(G2, s2)
        if th1.target != th2.target:
            continue
        for a in automorphisms(th1.U).auts:
            out.append(pi_mask(prod, th1.then(a), th2))
    return sorted(set(out), key=FiniteGroup.key)


def _orbits(prod: ProductGroup, X: list[int], N1: int, N2: int) -> list[list[int]]:
    G1, G2 = prod.factors
    gens = [(g, G2.identity) for g in G1.gens_of(N1)] + [(G1.identity, g) for g in G2.gens_of(N2)]
    Xset = set(X)
    seen: set[int] = set()
    out = []
    for L in X:
        if L in seen:
            continue
        orb = [L]
        seen.add(L)
        for M in orb:
            for g1, g2 in gens:
                M2 = conjugate_pair(prod, M, g1, g2)
                if M2 not in seen:
                    assert M2 in Xset
                    seen.add(M2)
                    orb.append(M2)
        out.append(orb)
    return out


def _block(prod: ProductGroup, X: list[int], N1: int, N2: int, reverse: bool = False) -> LabeledMatrix:
    """Class incidence block over the orbits of ``N1 x N2`` on ``X``.

    Entry ``(x, y)`` counts members of orbit ``x`` containing ``y``, or with
    ``reverse`` the members contained in ``y``.
    """
    classes = product_classes(prod)
    orbits = _orbits(prod, X, N1, N2)
    idx = [identify_class(prod, o[0]) for o in orbits]
    order = sorted(range(len(orbits)), key=lambda k: idx[k])
    orbits = [orbits[k] for k in order]
    idx = [idx[k] for k in order]
    reps = [o[0] for o in orbits]
    if reverse:
        rows = [[sum(1 for M in o if y & M == M) for y in reps] for o in orbits]
    else:
        rows = [[sum(1 for M in o if y & M == y) for y in reps] for o in orbits]
    return LabeledMatrix.square([classes[i].label for i in idx], rows)


def blocks_k(prod: ProductGroup) -> list[LabeledMatrix]:
    """One block per pair of subgroup classes ``(K1, K2)``, over the subgroups with those bottom groups."""
    G1, G2 = prod.factors
    out = []
    for c1 in subgroup_classes(G1):
        for c2 in subgroup_classes(G2):
            K1, K2 = c1.representative, c2.representative
            pairs = [(Section(G1, P1, K1), Section(G2, P2, K2))
                     for P1 in _overgroups_with_normal(G1, K1) for P2 in _overgroups_with_normal(G2, K2)]
            X = _fixed_part_subgroups(prod, pairs)
            out.append(_block(prod, X, c1.normalizer, c2.normalizer))
    return out


def blocks_p(prod: ProductGroup, reverse: bool = False) -> list[LabeledMatrix]:
    """One block per pair of subgroup classes ``(P1, P2)``, over the subgroups with those projections."""
    G1, G2 = prod.factors
    out = []
    for c1 in subgroup_classes(G1):
        for c2 in subgroup_classes(G2):
            P1, P2 = c1.representative, c2.representative
            pairs = [(Section(G1, P1, K1), Section(G2, P2, K2))
                     for K1 in _normal_subgroups(G1, P1) for K2 in _normal_subgroups(G2, P2)]
            X = _fixed_part_subgroups(prod, pairs)
            out.append(_block(prod, X, c1.normalizer, c2.normalizer, reverse))
    return out


def blocks_geq_p(prod: ProductGroup) -> list[LabeledMatrix]:
    return blocks_p(prod, reverse=True)


def blocks_pk(prod: ProductGroup) -> list[LabeledMatrix]:
    """One block per Goursat type ``U``: ``A^G1_U(≤) ⊗_{Aut(U)} A^G2_U(≤)``."""
    G1, G2 = prod.factors
    classes = product_classes(prod)
    out = []
    for t in product_types(prod):
        m1, m2 = morphism_classes(G1, t), morphism_classes(G2, t)
        a1, a2 = cim_mor(G1, t), cim_mor(G2, t)
        collapsed, eq = kron_over_group(a1, a2, out_action(G1, t, "aut"), out_action(G2, t, "aut"))
        n2 = len(m2)
        labels = []
        for k in eq.transversal:
            i, j = divmod(k, n2)
            L = pi_mask(prod, m1[i].theta, m2[j].theta)
            labels.append(classes[identify_class(prod, L)].label)
        block = collapsed.relabel(labels, labels)
        order = sorted(labels, key=lambda s: int(s[1:]))
        out.append(block.permuted(order))
    return out


def cim_product(prod: ProductGroup, mode: Mode | str) -> LabeledMatrix:
    """``A(≤_mode)`` over the product classes, assembled from the factored blocks."""
    mode = Mode(mode) if isinstance(mode, str) else mode
    cache = prod.cache.setdefault("cim_product", {})
    got = cache.get(mode)
    if got is not None:
        return got
    builders = {Mode.K: blocks_k, Mode.P: blocks_p, Mode.PK: blocks_pk, Mode.GEQ_P: blocks_geq_p}
    if mode not in builders:
        raise ValueError(f"factored class incidence matrices exist for modes k, pk, p and geq_p, not {mode.value}")
    labels = [c.label for c in product_classes(prod)]
    got = cache[mode] = block_sum(builders[mode](prod), labels)
    return got


def normalizer_diagonal(prod: ProductGroup) -> LabeledMatrix:
    from marksmith.product import normalizer_index

    classes = product_classes(prod)
    return LabeledMatrix.diagonal([c.label for c in classes], [normalizer_index(c) for c in classes])


def tom_product(prod: ProductGroup) -> LabeledMatrix:
    """``M(G1 x G2) = D · A(≤_K) · A(≤_{P/K}) · A(≤_P)`` without enumerating the product lattice."""
    return (normalizer_diagonal(prod) @ cim_product(prod, Mode.K)
            @ cim_product(prod, Mode.PK) @ cim_product(prod, Mode.P))


# -- oracles on the enumerated product lattice ---------------------------------


def subgroup_leq(prod: ProductGroup, lo: int, hi: int, mode: Mode) -> bool:
    """The orders on subgroups of ``G1 x G2``: containment plus the matching relation on both Goursat sections."""
    if mode is Mode.GEQ_P:
        return subgroup_leq(prod, hi, lo, Mode.P)
    if lo & hi != lo:
        return False
    if mode is Mode.FULL:
        return True
    g, h = goursat_decompose(prod, lo), goursat_decompose(prod, hi)
    return leq(g.left, h.left, mode) and leq(g.right, h.right, mode)


def oracle_cim_product(prod: ProductGroup, mode: Mode | str) -> LabeledMatrix:
    """``A(≤_mode)`` counted directly on the enumerated classes of the product, in product-class order."""
    mode = Mode(mode) if isinstance(mode, str) else mode
    classes = product_classes(prod)
    labels = match_labels(prod)
    by_label = {}
    for sc in subgroup_classes(prod):
        by_label[labels[sc.index]] = sc
    ordered = [by_label[c.label] for c in classes]
    rows = []
    for cx in ordered:
        rows.append([sum(1 for m in cx.members if subgroup_leq(prod, cy.representative, m, mode))
                     for cy in ordered])
    return LabeledMatrix.square([c.label for c in classes], rows)


def match_labels(prod: ProductGroup) -> list[str]:
    """Product-class label of each enumerated subgroup class of ``prod``."""
    classes = product_classes(prod)
    return [classes[identify_class(prod, sc.representative)].label for sc in subgroup_classes(prod)]


def oracle_tom_product(prod: ProductGroup, threads: int = 1) -> LabeledMatrix:
    """The brute-force table of marks of the product, relabelled and reordered to the product classes."""
    brute = brute_force_tom(prod, threads)
    labels = match_labels(prod)
    if len(set(labels)) != len(labels):
        raise AssertionError("two enumerated classes identified with one product class")
    order = [c.label for c in product_classes(prod)]
    return brute.relabel(labels, labels).permuted(order)
