"""Subgroups of ``G1 x G2`` through Goursat data: classes, normalizers and the star product."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from marksmith.groups import FiniteGroup, GroupError, ProductGroup, direct_product, normalizer
from marksmith.lattice import IsoType, automorphisms, isotype, quotient
from marksmith.morphisms import (
    UMorphism,
    automizer_of_base,
    base_morphism,
    double_coset_reps,
    morphism_automizer,
)
from marksmith.sections import Section, automizer, section_class_of, section_classes, section_types


@dataclass(frozen=True)
class GoursatSubgroup:
    """A subgroup ``L`` of a direct product with its Goursat sections.

    ``theta[p1]`` is the least ``p2`` with ``(p1, p2)`` in ``L`` (-1 off ``P1``);
    it determines the isomorphism ``P1/K1 -> P2/K2``.
    """

    prod: ProductGroup = field(compare=False, repr=False, hash=False)
    L: int
    P1: int
    K1: int
    P2: int
    K2: int
    theta: tuple[int, ...] = field(repr=False)
    U: IsoType = field(compare=False, repr=False, hash=False)

    @property
    def order(self) -> int:
        return self.L.bit_count()

    @property
    def left(self) -> Section:
        return Section(self.prod.factors[0], self.P1, self.K1)

    @property
    def right(self) -> Section:
        return Section(self.prod.factors[1], self.P2, self.K2)

    def morphism_pair(self) -> tuple[UMorphism, UMorphism]:
        """``(θ1, θ2)`` with ``Π(θ1, θ2) = L``; ``θ2`` is the conjugated base morphism of its class."""
        G2 = self.prod.factors[1]
        idx, g = section_class_of(self.right)
        th2 = base_morphism(section_classes(G2)[idx]).conjugate(g)
        G1 = self.prod.factors[0]
        images = [-1] * G1.order
        for p1 in FiniteGroup.members(self.P1):
            images[p1] = th2.images[self.theta[p1]]
        th1 = UMorphism(G1, self.P1, self.K1, th2.target, tuple(images))
        return th1, th2


def goursat_decompose(prod: ProductGroup, L: int) -> GoursatSubgroup:
    if L & ~prod.all_mask or not prod.is_subgroup(L):
        raise GroupError("not a subgroup of the direct product")
    G1, G2 = prod.factors
    P1, K1 = prod.project(L, 0), prod.kernel(L, 0)
    P2, K2 = prod.project(L, 1), prod.kernel(L, 1)
    theta = [-1] * G1.order
    for i in FiniteGroup.members(L):
        a, b = prod.split(i)
        if theta[a] < 0 or b < theta[a]:
            theta[a] = b
    t, _ = isotype(quotient(G1, P1, K1).group)
    return GoursatSubgroup(prod, L, P1, K1, P2, K2, tuple(theta), t)


def pi_mask(prod: ProductGroup, th1: UMorphism, th2: UMorphism) -> int:
    """``Π(θ1, θ2) = {(p1, p2) : θ1(p1) = θ2(p2)}`` as a mask."""
    if th1.target != th2.target:
        raise GroupError("morphisms onto different groups")
    by_image: dict[int, list[int]] = {}
    for p2 in FiniteGroup.members(th2.P):
        by_image.setdefault(th2.images[p2], []).append(p2)
    n2 = prod.factors[1].order
    out = 0
    for p1 in FiniteGroup.members(th1.P):
        base = p1 * n2
        for p2 in by_image[th1.images[p1]]:
            out |= 1 << (base + p2)
    return out


def pi(prod: ProductGroup, th1: UMorphism, th2: UMorphism) -> GoursatSubgroup:
    return goursat_decompose(prod, pi_mask(prod, th1, th2))


def conjugate_pair(prod: ProductGroup, L: int, g1: int, g2: int) -> int:
    """``L^(g1, g2)`` computed through the factor conjugation tables."""
    G1, G2 = prod.factors
    c1, c2 = G1.conj[g1], G2.conj[g2]
    n2 = G2.order
    out = 0
    for i in FiniteGroup.members(L):
        a, b = divmod(i, n2)
        out |= 1 << (int(c1[a]) * n2 + int(c2[b]))
    return out


# -- classes -----------------------------------------------------------------


@dataclass(frozen=True)
class ProductClass:
    index: int
    label: str
    representative: int
    goursat: GoursatSubgroup = field(repr=False)
    section1: int  # section class index in G1
    section2: int
    U: IsoType = field(repr=False)
    d: int  # double coset representative in Aut(U)
    dc_index: int
    morphisms: tuple[UMorphism, UMorphism] = field(repr=False)

    @property
    def order(self) -> int:
        return self.representative.bit_count()


def _pair_data(prod: ProductGroup, s1: int, s2: int):
    """Double coset reps and the map from automorphism index to double coset number."""
    G1, G2 = prod.factors
    cache = prod.cache.setdefault("pair_data", {})
    got = cache.get((s1, s2))
    if got is not None:
        return got
    t = section_classes(G1)[s1].isotype
    aut = automorphisms(t.model)
    A1 = automizer_of_base(G1, s1).A
    A2 = automizer_of_base(G2, s2).A
    reps = double_coset_reps(aut, A1, A2)
    ct = aut.compose_table
    which = [0] * aut.order
    for k, d in enumerate(reps):
        for a in A1:
            for b in A2:
                which[ct[ct[a][d]][b]] = k
    got = cache[(s1, s2)] = (reps, which)
    return got


def u_subgroup_classes(prod: ProductGroup, t: IsoType) -> list[tuple[int, int, int, int]]:
    """``(s1, s2, k, d)`` per class of subgroups with Goursat type ``t``: one per double coset."""
    G1, G2 = prod.factors
    out = []
    c1 = [sc.index for sc in section_classes(G1) if sc.isotype == t]
    c2 = [sc.index for sc in section_classes(G2) if sc.isotype == t]
    for s1 in c1:
        for s2 in c2:
            reps, _ = _pair_data(prod, s1, s2)
            out.extend((s1, s2, k, d) for k, d in enumerate(reps))
    return out


def product_types(prod: ProductGroup) -> list[IsoType]:
    G1, G2 = prod.factors
    names2 = {t.name for t in section_types(G2)}
    return [t for t in section_types(G1) if t.name in names2]


def product_classes(prod: ProductGroup) -> list[ProductClass]:
    """All conjugacy classes of subgroups of ``G1 x G2``, labelled ``L1, L2, ...``.

    Ordered by Goursat type, then the two section classes, then the double coset.
    """
    got = prod.cache.get("product_classes")
    if got is not None:
        return got
    G1, G2 = prod.factors
    out = []
    for t in product_types(prod):
        aut = automorphisms(t.model)
        for s1, s2, k, d in u_subgroup_classes(prod, t):
            th1 = base_morphism(section_classes(G1)[s1]).then(aut.auts[d])
            th2 = base_morphism(section_classes(G2)[s2])
            gs = pi(prod, th1, th2)
            idx = len(out)
            out.append(ProductClass(idx, f"L{idx + 1}", gs.L, gs, s1, s2, t, d, k, (th1, th2)))
    prod.cache["product_classes"] = out
    prod.cache["product_class_keys"] = {(c.section1, c.section2, c.dc_index): c.index for c in out}
    return out


def identify_class(prod: ProductGroup, L: int) -> int:
    """Index of the product class containing the subgroup ``L``."""
    product_classes(prod)
    G1, G2 = prod.factors
    gs = goursat_decompose(prod, L)
    s1, g1 = section_class_of(gs.left)
    s2, g2 = section_class_of(gs.right)
    L0 = conjugate_pair(prod, L, int(G1.inverse[g1]), int(G2.inverse[g2]))
    b1 = base_morphism(section_classes(G1)[s1])
    b2 = base_morphism(section_classes(G2)[s2])
    U = b1.U
    dmap = [-1] * U.order
    n2 = G2.order
    for i in FiniteGroup.members(L0):
        a, b = divmod(i, n2)
        dmap[b1.images[a]] = b2.images[b]
    aut = automorphisms(U)
    _, which = _pair_data(prod, s1, s2)
    return prod.cache["product_class_keys"][(s1, s2, which[aut.index_of(tuple(dmap))])]


def canonical_key(prod: ProductGroup, L: int) -> tuple[int, ...]:
    """Least canonical key among the conjugates of ``L`` (the brute-force class representative)."""
    G1, G2 = prod.factors
    best = None
    seen = set()
    for g1 in range(G1.order):
        for g2 in range(G2.order):
            M = conjugate_pair(prod, L, g1, g2)
            if M in seen:
                continue
            seen.add(M)
            k = FiniteGroup.key(M)
            if best is None or k < best:
                best = k
    return best


# -- normalizers -------------------------------------------------------------


def _automizer_data(th: UMorphism):
    s = th.section
    sa = automizer(s)
    A = morphism_automizer(th).A
    return sa, A


def normalizer_index(cls_or_pair) -> Fraction:
    """``|N(L) : L|`` from ``|C1:K1| |C2:K2| |A_θ1 ∩ A_θ2| / |U|``.

    Accepts a :class:`ProductClass` or a pair ``(θ1, θ2)``.
    """
    th1, th2 = cls_or_pair.morphisms if isinstance(cls_or_pair, ProductClass) else cls_or_pair
    sa1, A1 = _automizer_data(th1)
    sa2, A2 = _automizer_data(th2)
    c1 = Fraction(sa1.C.bit_count(), th1.K.bit_count())
    c2 = Fraction(sa2.C.bit_count(), th2.K.bit_count())
    return c1 * c2 * len(A1 & A2) / th1.U.order


def induced_automorphisms(th: UMorphism) -> dict[int, int]:
    """For each ``n`` in ``N_G(P) ∩ N_G(K)`` the index in ``Aut(U)`` of ``θ(p) -> θ(p^n)``."""
    G = th.group
    aut = automorphisms(th.U)
    pre = th.preimages()
    N = normalizer(G, th.P) & normalizer(G, th.K)
    conj = G.conj
    return {n: aut.index_of(tuple(th.images[int(conj[n, p])] for p in pre)) for n in FiniteGroup.members(N)}


def normalizer_via_automizers(prod: ProductGroup, th1: UMorphism, th2: UMorphism) -> int:
    """``N(Π(θ1, θ2))``: pairs of section normalizer elements inducing the same automorphism of ``U``."""
    a1 = induced_automorphisms(th1)
    a2 = induced_automorphisms(th2)
    by_aut: dict[int, list[int]] = {}
    for n2, a in a2.items():
        by_aut.setdefault(a, []).append(n2)
    out = 0
    for n1, a in a1.items():
        for n2 in by_aut.get(a, ()):
            out |= 1 << prod.pair(n1, n2)
    return out


# -- star product --------------------------------------------------------------


def _check_middle(left: ProductGroup, right: ProductGroup) -> None:
    a, b = left.factors[1], right.factors[0]
    if a is not b and a.elements != b.elements:
        raise GroupError("middle groups of the star product differ")


def _out_product(left: ProductGroup, right: ProductGroup, out: ProductGroup | None) -> ProductGroup:
    if out is None:
        out = direct_product(left.factors[0], right.factors[1])[0]
    return out


def star_relational(left: ProductGroup, L: int, right: ProductGroup, M: int,
                    out: ProductGroup | None = None) -> int:
    """``{(a, c) : (a, b) in L and (b, c) in M for some b}`` by a sweep over the middle group."""
    _check_middle(left, right)
    out = _out_product(left, right, out)
    n_mid = left.factors[1].order
    from_mid: list[int] = [0] * n_mid
    for i in FiniteGroup.members(M):
        b, c = right.split(i)
        from_mid[b] |= 1 << c
    n3 = right.factors[1].order
    res = 0
    for i in FiniteGroup.members(L):
        a, b = left.split(i)
        for c in FiniteGroup.members(from_mid[b]):
            res |= 1 << (a * n3 + c)
    return res


def star_butterfly(left: ProductGroup, L: int, right: ProductGroup, M: int,
                   out: ProductGroup | None = None) -> int:
    """The star product assembled from the Butterfly meet of the two middle sections."""
    _check_middle(left, right)
    out = _out_product(left, right, out)
    G2 = left.factors[1]
    t2 = G2.table
    gl, gm = goursat_decompose(left, L), goursat_decompose(right, M)
    P1, K1 = gl.P2, gl.K2
    P2, K2 = gm.P1, gm.K1
    I = P1 & P2
    P1p = G2.product_set(I, K1)
    K1p = G2.product_set(P1 & K2, K1)
    K2p = G2.product_set(P2 & K1, K2)
    # rows of L by middle element, columns of M by middle element
    n2 = G2.order
    lrows: dict[int, list[int]] = {}
    for i in FiniteGroup.members(L):
        a, b = left.split(i)
        lrows.setdefault(a, []).append(b)
    mcols: list[int] = [0] * n2
    n3 = right.factors[1].order
    for i in FiniteGroup.members(M):
        b, c = right.split(i)
        mcols[b] |= 1 << c
    K3p = 0
    for k in FiniteGroup.members(K2p):
        K3p |= mcols[k]
    k3 = FiniteGroup.members(K3p)
    t3 = right.factors[1].table
    res = 0
    k1p = FiniteGroup.members(K1p)
    for a, bs in lrows.items():
        b = next((x for x in bs if P1p >> x & 1), None)
        if b is None:
            continue
        coset = FiniteGroup.mask_of(int(t2[b, k]) for k in k1p)
        m = (coset & I & -(coset & I)).bit_length() - 1
        c = (mcols[m] & -mcols[m]).bit_length() - 1
        for k in k3:
            res |= 1 << (a * n3 + int(t3[c, k]))
    return res


def star(left: ProductGroup, L: int, right: ProductGroup, M: int,
         out: ProductGroup | None = None) -> GoursatSubgroup:
    """``L * M`` via the Butterfly route, checked against the relational sweep."""
    out = _out_product(left, right, out)
    via_b = star_butterfly(left, L, right, M, out)
    via_r = star_relational(left, L, right, M, out)
    if via_b != via_r:
        raise AssertionError("Butterfly route and relational route disagree")
    return goursat_decompose(out, via_b)
