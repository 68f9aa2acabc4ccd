"""Sections ``(P, K)`` with ``K`` normal in ``P``: classes, orders, decompositions, automizers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from marksmith.groups import FiniteGroup, GroupError, normalizer
from marksmith.lattice import (
    Isomorphism,
    IsoType,
    isotype,
    normal_closure,
    normal_subgroups_of,
    quotient,
    subgroup_classes,
    subgroup_label,
    all_subgroups,
)
from marksmith.matrices import LabeledMatrix


class Mode(enum.Enum):
    """The relations on sections.

    ``FULL`` is componentwise inclusion; ``P`` and ``K`` additionally fix the
    top resp. bottom group; ``PK`` asks the canonical map between the
    quotients to be an isomorphism; ``PRIME`` is the size-compatible order
    ``P' <= P and K & P' <= K'``; ``GEQ_P`` is the opposite of ``P``.
    """

    FULL = "full"
    P = "p"
    K = "k"
    PK = "pk"
    PRIME = "prime"
    GEQ_P = "geq_p"


@dataclass(frozen=True)
class Section:
    group: FiniteGroup = field(compare=False, repr=False, hash=False)
    P: int
    K: int

    @property
    def size(self) -> int:
        return self.P.bit_count() // self.K.bit_count()

    def conjugate(self, g: int) -> Section:
        G = self.group
        return Section(G, G.conjugate(self.P, g), G.conjugate(self.K, g))

    def key(self):
        return (self.size, self.P.bit_count(), FiniteGroup.key(self.P), FiniteGroup.key(self.K))

    def label(self) -> str:
        return f"({subgroup_label(self.group, self.P)},{subgroup_label(self.group, self.K)})"


def make_section(G: FiniteGroup, P: int, K: int) -> Section:
    from marksmith.groups import is_normal

    if not (G.is_subgroup(P) and G.is_subgroup(K) and is_normal(G, K, P)):
        raise GroupError("not a section: K must be a normal subgroup of the subgroup P")
    return Section(G, P, K)


def all_sections(G: FiniteGroup) -> list[Section]:
    got = G.cache.get("sections")
    if got is None:
        got = [Section(G, P, K) for P in all_subgroups(G) for K in normal_subgroups_of(G, P)]
        got.sort(key=Section.key)
        G.cache["sections"] = got
    return got


# -- order relations ---------------------------------------------------------


def _same_group(a: Section, b: Section) -> None:
    if a.group is not b.group:
        raise GroupError("sections of different groups")


def leq(a: Section, b: Section, mode: Mode = Mode.FULL) -> bool:
    """Whether ``a <= b`` in the given relation."""
    _same_group(a, b)
    if mode is Mode.GEQ_P:
        return leq(b, a, Mode.P)
    P1, K1, P, K = a.P, a.K, b.P, b.K
    if mode is Mode.PRIME:
        return P1 & P == P1 and K & P1 & ~K1 == 0
    if P1 & P != P1 or K1 & K != K1:
        return False
    if mode is Mode.FULL:
        return True
    if mode is Mode.P:
        return P1 == P
    if mode is Mode.K:
        return K1 == K
    if mode is Mode.PK:
        return K & P1 == K1 and P1.bit_count() * K.bit_count() == P.bit_count() * (P1 & K).bit_count()
    raise ValueError(mode)


def meet(a: Section, b: Section) -> Section:
    _same_group(a, b)
    return Section(a.group, a.P & b.P, a.K & b.K)


def join(a: Section, b: Section) -> Section:
    _same_group(a, b)
    G = a.group
    P = G.join(a.P, b.P)
    return Section(G, P, normal_closure(G, P, G.join(a.K, b.K)))


def decompose(a: Section, b: Section) -> tuple[Section, Section]:
    """For ``a <= b`` the unique ``a <=_P lo <=_PK hi <=_K b``: ``lo = (P', K∩P')``, ``hi = (P'K, K)``."""
    if not leq(a, b):
        raise GroupError("first section is not below the second")
    G = a.group
    lo = Section(G, a.P, b.K & a.P)
    hi = Section(G, G.product_set(a.P, b.K), b.K)
    return lo, hi


def decompose_prime(a: Section, b: Section) -> tuple[Section, Section]:
    """For ``a <=' b`` the sections ``s2 = (P', K∩P')`` and ``s1 = (P'K, K)``.

    They satisfy ``a >=_P s2 <=_PK s1 <=_K b``.
    """
    if not leq(a, b, Mode.PRIME):
        raise GroupError("first section is not below the second in the primed order")
    G = a.group
    return Section(G, a.P, b.K & a.P), Section(G, G.product_set(a.P, b.K), b.K)


# -- classes -----------------------------------------------------------------


@dataclass(frozen=True)
class SectionClass:
    index: int
    section: Section
    size: int
    stabilizer: int
    members: tuple[Section, ...] = field(repr=False)
    isotype: IsoType = field(repr=False)
    to_model: Isomorphism = field(repr=False)  # quotient(P, K).group -> isotype.model
    label: str = ""

    @property
    def order(self) -> int:
        return self.section.size


def section_classes(G: FiniteGroup) -> list[SectionClass]:
    """Classes of sections: per subgroup class ``[P]``, the ``N_G(P)``-orbits on normal subgroups of ``P``."""
    got = G.cache.get("section_classes")
    if got is not None:
        return got
    found = []
    where: dict[Section, tuple[int, int]] = {}
    for sc in subgroup_classes(G):
        P = sc.representative
        N = FiniteGroup.members(normalizer(G, P))
        seen: set[int] = set()
        for K in normal_subgroups_of(G, P):
            if K in seen:
                continue
            for n in N:
                seen.add(G.conjugate(K, n))
            found.append(Section(G, P, K))
    found.sort(key=Section.key)
    out = []
    labels: dict[str, int] = {}
    for idx, s in enumerate(found):
        members = []
        for g in range(G.order):
            t = s.conjugate(g)
            if t not in where:
                where[t] = (idx, g)
                members.append(t)
        members.sort(key=Section.key)
        Q = quotient(G, s.P, s.K)
        t, iso = isotype(Q.group)
        label = s.label()
        if label in labels:
            labels[label] += 1
            label = f"{label}#{labels[label]}"
        else:
            labels[label] = 0
        stab = normalizer(G, s.P) & normalizer(G, s.K)
        out.append(SectionClass(idx, s, len(members), stab, tuple(members), t, iso, label))
    G.cache["section_classes"] = out
    G.cache["section_class_of"] = where
    return out


def section_class_of(s: Section) -> tuple[int, int]:
    """``(class index, g)`` with ``representative^g = s``."""
    G = s.group
    section_classes(G)
    try:
        return G.cache["section_class_of"][s]
    except KeyError:
        raise GroupError("not a section of the group") from None


def sections_of_type(G: FiniteGroup, t: IsoType) -> list[SectionClass]:
    return [c for c in section_classes(G) if c.isotype == t]


def section_types(G: FiniteGroup) -> list[IsoType]:
    seen: dict[str, IsoType] = {}
    for c in section_classes(G):
        seen.setdefault(c.isotype.name, c.isotype)
    return sorted(seen.values(), key=lambda t: t.sort_key)


# -- automizers and Butterfly meets -------------------------------------------


@dataclass(frozen=True)
class SectionAutomizer:
    N: int
    C: int
    autgroup: tuple[Isomorphism, ...]


def automizer(s: Section) -> SectionAutomizer:
    """Automorphisms of ``P/K`` induced by conjugation with ``N_G(P) ∩ N_G(K)``."""
    G = s.group
    Q = quotient(G, s.P, s.K)
    pre = {}
    for p in FiniteGroup.members(s.P):
        pre.setdefault(Q.project[p], p)
    N = normalizer(G, s.P) & normalizer(G, s.K)
    conj = G.conj
    maps = set()
    C = 0
    ident = tuple(range(Q.group.order))
    for n in FiniteGroup.members(N):
        m = tuple(Q.project[int(conj[n, pre[q]])] for q in range(Q.group.order))
        maps.add(m)
        if m == ident:
            C |= 1 << n
    auts = tuple(Isomorphism(Q.group, Q.group, m) for m in sorted(maps))
    return SectionAutomizer(N, C, auts)


@dataclass(frozen=True)
class ButterflyMeet:
    meet: Section
    first: Section  # (P1', K1')
    second: Section  # (P2', K2')
    phi1: Isomorphism  # quotient of meet -> quotient of first
    phi2: Isomorphism


def _canonical(G: FiniteGroup, lo: Section, hi: Section) -> Isomorphism:
    """The map ``p lo.K -> p hi.K`` for ``lo <=_PK hi``, between the coset-action quotients."""
    Ql = quotient(G, lo.P, lo.K)
    Qh = quotient(G, hi.P, hi.K)
    m = [0] * Ql.group.order
    for p in FiniteGroup.members(lo.P):
        m[Ql.project[p]] = Qh.project[p]
    return Isomorphism(Ql.group, Qh.group, tuple(m))


def butterfly_meet(a: Section, b: Section) -> ButterflyMeet:
    _same_group(a, b)
    G = a.group
    I = a.P & b.P
    P1 = G.product_set(I, a.K)
    P2 = G.product_set(I, b.K)
    K1 = G.product_set(a.P & b.K, a.K)
    K2 = G.product_set(b.P & a.K, b.K)
    m = Section(G, P1 & P2, K1 & K2)
    s1, s2 = Section(G, P1, K1), Section(G, P2, K2)
    return ButterflyMeet(m, s1, s2, _canonical(G, m, s1), _canonical(G, m, s2))


# -- class incidence matrices ---------------------------------------------------


def incidence(sections: Sequence[Section], mode: Mode) -> list[list[int]]:
    """Plain incidence matrix: entry ``(x, y)`` is 1 iff ``y <= x``."""
    return [[int(leq(y, x, mode)) for y in sections] for x in sections]


def cim_sections(G: FiniteGroup, mode: Mode | str = Mode.FULL,
                 reps: Sequence[Section] | None = None) -> LabeledMatrix:
    """Class incidence matrix: entry ``(x, y)`` counts the members of class ``x`` above ``y``.

    ``reps`` optionally replaces the column representatives (one per class,
    in class order) to check independence of the transversal.
    """
    mode = Mode(mode) if isinstance(mode, str) else mode
    classes = section_classes(G)
    cols = list(reps) if reps is not None else [c.section for c in classes]
    labels = [c.label for c in classes]
    rows = [[sum(1 for m in cx.members if leq(y, m, mode)) for y in cols] for cx in classes]
    return LabeledMatrix.square(labels, rows)
