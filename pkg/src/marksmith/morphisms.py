"""U-morphisms ``θ: P/K -> U``, their G-classes, automizers, graphs and class incidence matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

from marksmith.groups import FiniteGroup, GroupError, ProductGroup
from marksmith.lattice import AutomorphismGroup, Isomorphism, IsoType, automorphisms, quotient
from marksmith.matrices import EquivalenceOnIndex, LabeledMatrix, collapse
from marksmith.sections import (
    Mode,
    Section,
    SectionClass,
    cim_sections,
    section_class_of,
    section_classes,
)


@dataclass(frozen=True)
class UMorphism:
    """A surjection ``P -> U`` with kernel ``K``, stored as a table over all of ``G`` (-1 outside ``P``)."""

    group: FiniteGroup = field(compare=False, repr=False, hash=False)
    P: int
    K: int
    target: IsoType = field(compare=False, repr=False, hash=False)
    images: tuple[int, ...] = field(repr=False)

    @property
    def section(self) -> Section:
        return Section(self.group, self.P, self.K)

    @property
    def U(self) -> FiniteGroup:
        return self.target.model

    def __call__(self, p: int) -> int:
        y = self.images[p]
        if y < 0:
            raise GroupError("element outside the domain of the morphism")
        return y

    def then(self, alpha: Isomorphism) -> UMorphism:
        """``θα``: apply ``θ``, then the automorphism ``α`` of ``U``."""
        a = alpha.map
        return UMorphism(self.group, self.P, self.K, self.target,
                         tuple(a[y] if y >= 0 else -1 for y in self.images))

    def conjugate(self, g: int) -> UMorphism:
        """``θ^g`` on ``(P^g, K^g)`` with ``θ^g(x^g) = θ(x)``."""
        G = self.group
        row = G.conj[g]
        out = [-1] * G.order
        for x in FiniteGroup.members(self.P):
            out[int(row[x])] = self.images[x]
        return UMorphism(G, G.conjugate(self.P, g), G.conjugate(self.K, g), self.target, tuple(out))

    def preimages(self) -> list[int]:
        """One element of ``P`` mapping to each element of ``U``."""
        pre = [-1] * self.U.order
        for p in FiniteGroup.members(self.P):
            u = self.images[p]
            if pre[u] < 0:
                pre[u] = p
        return pre

    def relative_to(self, other: UMorphism) -> Isomorphism:
        """The automorphism ``β`` of ``U`` with ``self = other·β`` (same section)."""
        if self.P != other.P or self.K != other.K:
            raise GroupError("morphisms live on different sections")
        m = [0] * self.U.order
        for u, p in enumerate(other.preimages()):
            m[u] = self.images[p]
        return Isomorphism(self.U, self.U, tuple(m))


def base_morphism(sc: SectionClass) -> UMorphism:
    """The morphism ``P -> P/K -> model`` of a section class representative."""
    s = sc.section
    G = s.group
    Q = quotient(G, s.P, s.K)
    to_model = sc.to_model.map
    images = tuple(to_model[q] if q >= 0 else -1 for q in Q.project)
    return UMorphism(G, s.P, s.K, sc.isotype, images)


def check_morphism(theta: UMorphism) -> None:
    """Raise unless ``theta`` is a surjective homomorphism with kernel ``K``."""
    G, U = theta.group, theta.U
    t, tu = G.table, U.table
    ps = FiniteGroup.members(theta.P)
    for a in ps:
        for b in ps:
            if theta.images[int(t[a, b])] != tu[theta.images[a], theta.images[b]]:
                raise GroupError("not a homomorphism")
    if {theta.images[p] for p in ps} != set(range(U.order)):
        raise GroupError("not surjective")
    ker = FiniteGroup.mask_of(p for p in ps if theta.images[p] == U.identity)
    if ker != theta.K:
        raise GroupError("kernel differs from K")


# -- automizers --------------------------------------------------------------


@dataclass(frozen=True)
class MorphismAutomizer:
    A: frozenset[int]  # indices into automorphisms(U).auts
    O: frozenset[int]  # indices into automorphisms(U).out_transversal

    @property
    def order(self) -> int:
        return len(self.A)


def morphism_automizer(theta: UMorphism) -> MorphismAutomizer:
    """``A_θ``: automorphisms ``θ(p) -> θ(p^n)`` for ``n`` in ``N_G(P) ∩ N_G(K)``."""
    from marksmith.groups import normalizer

    G = theta.group
    aut = automorphisms(theta.U)
    pre = theta.preimages()
    N = normalizer(G, theta.P) & normalizer(G, theta.K)
    conj = G.conj
    A = set()
    for n in FiniteGroup.members(N):
        A.add(aut.index_of(tuple(theta.images[int(conj[n, p])] for p in pre)))
    return MorphismAutomizer(frozenset(A), frozenset(aut.out_class(a) for a in A))


# -- classes -----------------------------------------------------------------


@dataclass(frozen=True)
class MorphismClass:
    index: int
    section_class: int
    theta: UMorphism = field(repr=False)
    automizer: MorphismAutomizer = field(repr=False)
    d: int  # the coset representative in Aut(U): theta = base·d
    label: str = ""


def right_coset_reps(aut: AutomorphismGroup, A: frozenset[int]) -> list[int]:
    """Least element of each right coset ``A·d`` in ``Aut(U)``."""
    ct = aut.compose_table
    covered: set[int] = set()
    reps = []
    for d in range(aut.order):
        if d in covered:
            continue
        reps.append(d)
        covered.update(ct[a][d] for a in A)
    return reps


def double_coset_reps(aut: AutomorphismGroup, A1: frozenset[int], A2: frozenset[int]) -> list[int]:
    """Least element of each double coset ``A1·d·A2``."""
    ct = aut.compose_table
    covered: set[int] = set()
    reps = []
    for d in range(aut.order):
        if d in covered:
            continue
        reps.append(d)
        covered.update(ct[ct[a][d]][b] for a in A1 for b in A2)
    return reps


def morphism_classes(G: FiniteGroup, t: IsoType) -> list[MorphismClass]:
    """G-classes of morphisms onto the model of ``t``: ``base·d`` per section class and coset ``A_base·d``."""
    cache = G.cache.setdefault("morphism_classes", {})
    got = cache.get(t.name)
    if got is not None:
        return got
    aut = automorphisms(t.model)
    out = []
    for sc in section_classes(G):
        if sc.isotype != t:
            continue
        base = base_morphism(sc)
        auto = morphism_automizer(base)
        reps = right_coset_reps(aut, auto.A)
        for k, d in enumerate(reps):
            theta = base.then(aut.auts[d])
            label = sc.label if len(reps) == 1 else f"{sc.label}:{k + 1}"
            out.append(MorphismClass(len(out), sc.index, theta, morphism_automizer(theta), d, label))
    cache[t.name] = out
    return out


def _base_by_class(G: FiniteGroup, idx: int) -> UMorphism:
    cache = G.cache.setdefault("base_morphisms", {})
    got = cache.get(idx)
    if got is None:
        got = cache[idx] = base_morphism(section_classes(G)[idx])
    return got


def class_of_morphism(theta: UMorphism) -> tuple[int, int]:
    """``(class index, g)`` with ``representative^g = theta``."""
    G = theta.group
    classes = morphism_classes(G, theta.target)
    sidx, g = section_class_of(theta.section)
    ginv = int(G.inverse[g])
    local = theta.conjugate(ginv)  # on the class representative section
    base = _base_by_class(G, sidx)
    aut = automorphisms(theta.U)
    beta = aut.index_of(local.relative_to(base))
    ct, inv = aut.compose_table, aut.inverse_index
    for mc in classes:
        if mc.section_class != sidx:
            continue
        if ct[beta][inv[mc.d]] in automizer_of_base(G, sidx).A:
            # find n in the stabilizer with mc.theta^n = local
            from marksmith.groups import normalizer

            s = mc.theta.section
            N = normalizer(G, s.P) & normalizer(G, s.K)
            for n in FiniteGroup.members(N):
                if mc.theta.conjugate(n).images == local.images:
                    return mc.index, int(G.table[n, g])
            raise AssertionError("no conjugator found inside the section stabilizer")
    raise AssertionError("morphism outside every class")


def automizer_of_base(G: FiniteGroup, sidx: int) -> MorphismAutomizer:
    cache = G.cache.setdefault("base_automizers", {})
    got = cache.get(sidx)
    if got is None:
        got = cache[sidx] = morphism_automizer(_base_by_class(G, sidx))
    return got


def out_action(G: FiniteGroup, t: IsoType, which: str = "out") -> list[list[int]]:
    """Permutations of the morphism classes induced by ``θ -> θα``.

    ``which="out"`` uses the Out-transversal, ``"aut"`` all of ``Aut(U)``.
    """
    aut = automorphisms(t.model)
    alphas = aut.out_transversal if which == "out" else aut.auts
    classes = morphism_classes(G, t)
    return [[class_of_morphism(mc.theta.then(a))[0] for mc in classes] for a in alphas]


def morphisms(G: FiniteGroup, t: IsoType) -> list[UMorphism]:
    """Every morphism onto the model of ``t``, ordered by (section class, member, automorphism)."""
    aut = automorphisms(t.model)
    out = []
    for sc in section_classes(G):
        if sc.isotype != t:
            continue
        base = base_morphism(sc)
        for m in sc.members:
            g = section_class_of(m)[1]
            b = base.conjugate(g)
            out.extend(b.then(a) for a in aut.auts)
    return out


def morphism_leq(lo: UMorphism, hi: UMorphism) -> bool:
    """Whether ``lo <= hi``: the domain of ``lo`` lies in that of ``hi`` and the tables agree there."""
    if lo.group is not hi.group:
        raise GroupError("morphisms of different groups")
    if lo.target != hi.target:
        raise GroupError("morphisms onto different groups")
    if lo.P & hi.P != lo.P:
        return False
    return all(lo.images[p] == hi.images[p] for p in FiniteGroup.members(lo.P))


def graph(theta: UMorphism, prod: ProductGroup) -> int:
    """``{(p, θ(p))}`` as a subgroup of ``G x U``."""
    return FiniteGroup.mask_of(prod.pair(p, theta.images[p]) for p in FiniteGroup.members(theta.P))


def orbit(theta: UMorphism) -> list[UMorphism]:
    G = theta.group
    seen = {}
    for g in range(G.order):
        c = theta.conjugate(g)
        seen.setdefault((c.P, c.images), c)
    return [seen[k] for k in sorted(seen)]


def cim_mor(G: FiniteGroup, t: IsoType, reps: list[UMorphism] | None = None) -> LabeledMatrix:
    """Entry ``(x, y)``: number of G-conjugates of ``θ_x`` lying above ``θ_y``."""
    classes = morphism_classes(G, t)
    cols = reps if reps is not None else [mc.theta for mc in classes]
    rows = []
    for mc in classes:
        orb = orbit(mc.theta)
        rows.append([sum(1 for th in orb if morphism_leq(y, th)) for y in cols])
    return LabeledMatrix.square([mc.label for mc in classes], rows)


def out_equivalence(G: FiniteGroup, t: IsoType) -> EquivalenceOnIndex:
    return EquivalenceOnIndex.from_orbits(len(morphism_classes(G, t)), out_action(G, t))


def collapsed_cim_mor(G: FiniteGroup, t: IsoType, eq: EquivalenceOnIndex | None = None) -> LabeledMatrix:
    """``R(Out(U)) · A^G_U(≤) · C(Out(U))``, labelled by section classes."""
    classes = morphism_classes(G, t)
    eq = eq or out_equivalence(G, t)
    labels = [section_classes(G)[classes[c[0]].section_class].label for c in eq.classes]
    return collapse(cim_mor(G, t), eq, labels)


def cim_sections_of_type(G: FiniteGroup, t: IsoType) -> LabeledMatrix:
    """The block of ``A(≤_{P/K})`` over the section classes of type ``t``."""
    full = cim_sections(G, Mode.PK)
    labels = [sc.label for sc in section_classes(G) if sc.isotype == t]
    return full.submatrix(labels)
