"""Subgroup lattices, quotients, isomorphisms and automorphism groups."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from marksmith import catalogue
from marksmith.groups import (
    BoundExceeded,
    FiniteGroup,
    GroupError,
    Perm,
    is_normal,
    normalizer,
    right_cosets,
)

DEFAULT_MAX_ORDER = 400


def max_order() -> int:
    return int(os.environ.get("MARKSMITH_MAX_ORDER", DEFAULT_MAX_ORDER))


def check_bound(G: FiniteGroup) -> None:
    if G.order > max_order():
        raise BoundExceeded(f"group order {G.order} exceeds bound {max_order()} (MARKSMITH_MAX_ORDER)")


def subgroup_sort_key(G: FiniteGroup, H: int):
    return (H.bit_count(), G.key(H))


def all_subgroups(G: FiniteGroup) -> list[int]:
    """Every subgroup of ``G`` once, sorted by (order, canonical key).

    Layered joins: start from the cyclic subgroups and join each newly found
    subgroup with every cyclic subgroup it does not contain, until nothing new
    appears.
    """
    got = G.cache.get("subgroups")
    if got is not None:
        return got
    check_bound(G)
    cyclic: dict[int, int] = {}
    for i in range(G.order):
        cyclic.setdefault(G.generate([i]), i)
    seen = set(cyclic)
    cyc = sorted(cyclic.items(), key=lambda item: item[1])
    frontier = sorted(seen, key=lambda m: subgroup_sort_key(G, m))
    while frontier:
        new = []
        for H in frontier:
            gH = G.gens_of(H)
            for C, c in cyc:
                if C & H == C:
                    continue
                J = G.generate(gH + (c,))
                if J not in seen:
                    seen.add(J)
                    G._gens.setdefault(J, gH + (c,))
                    new.append(J)
        frontier = new
    out = sorted(seen, key=lambda m: subgroup_sort_key(G, m))
    G.cache["subgroups"] = out
    return out


@dataclass(frozen=True)
class SubgroupClass:
    index: int
    representative: int
    size: int
    normalizer: int
    members: tuple[int, ...] = field(repr=False)
    label: str = ""

    @property
    def order(self) -> int:
        return self.representative.bit_count()


def _class_labels(G: FiniteGroup, reps: list[int]) -> list[str]:
    by_order = Counter(r.bit_count() for r in reps)
    seen: Counter = Counter()
    labels = []
    for r in reps:
        k = r.bit_count()
        if r == G.all_mask:
            base = "G"
        else:
            base = str(k)
        if by_order[k] > 1 and r != G.all_mask:
            base += "abcdefghijklmnopqrstuvwxyz"[seen[k]] if seen[k] < 26 else f"_{seen[k]}"
        seen[k] += 1
        labels.append(base)
    return labels


def subgroup_classes(G: FiniteGroup) -> list[SubgroupClass]:
    """Conjugacy classes of subgroups; each representative is the canonical minimum of its class."""
    got = G.cache.get("subgroup_classes")
    if got is not None:
        return got
    subs = all_subgroups(G)
    where: dict[int, tuple[int, int]] = {}
    raw = []
    for H in subs:
        if H in where:
            continue
        idx = len(raw)
        members = []
        for g in range(G.order):
            Hg = G.conjugate(H, g)
            if Hg not in where:
                where[Hg] = (idx, g)
                members.append(Hg)
        members.sort(key=lambda m: G.key(m))
        raw.append((H, members))
    labels = _class_labels(G, [r for r, _ in raw])
    out = [
        SubgroupClass(i, H, len(ms), normalizer(G, H), tuple(ms), labels[i])
        for i, (H, ms) in enumerate(raw)
    ]
    G.cache["subgroup_classes"] = out
    G.cache["subgroup_class_of"] = where
    return out


def subgroup_class_of(G: FiniteGroup, H: int) -> tuple[int, int]:
    """``(class index, g)`` with ``rep^g = H``."""
    subgroup_classes(G)
    try:
        return G.cache["subgroup_class_of"][H]
    except KeyError:
        raise GroupError("not a subgroup of the group") from None


def subgroup_label(G: FiniteGroup, H: int) -> str:
    return subgroup_classes(G)[subgroup_class_of(G, H)[0]].label


def normal_subgroups_of(G: FiniteGroup, P: int) -> list[int]:
    """Normal subgroups of the subgroup ``P`` (as subgroups of ``G``), sorted."""
    cache = G.cache.setdefault("normal_in", {})
    got = cache.get(P)
    if got is None:
        got = [K for K in all_subgroups(G) if K & P == K and is_normal(G, K, P)]
        cache[P] = got
    return got


def normal_closure(G: FiniteGroup, B: int, A: int) -> int:
    """Smallest normal subgroup of ``B`` containing ``A``."""
    if A & B != A:
        raise GroupError("A is not contained in B")
    N = A
    gens_b = G.gens_of(B)
    changed = True
    while changed:
        changed = False
        for b in gens_b:
            if G.conjugate(N, b) != N:
                extra = [G.conj[b, a] for a in G.gens_of(N)]
                N = G.generate(G.gens_of(N) + tuple(int(x) for x in extra))
                changed = True
    return N


# -- quotients ---------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    """``P/K`` realised as the permutation action of ``P`` on the right cosets of ``K``."""

    parent: FiniteGroup
    P: int
    K: int
    group: FiniteGroup
    project: tuple[int, ...] = field(repr=False)  # -1 outside P

    def preimage(self, q: int) -> int:
        return FiniteGroup.mask_of(i for i, x in enumerate(self.project) if x == q)

    def image(self, mask: int) -> int:
        return FiniteGroup.mask_of(self.project[i] for i in FiniteGroup.members(mask))


def quotient(G: FiniteGroup, P: int, K: int) -> Quotient:
    if not is_normal(G, K, P):
        raise GroupError("K is not a normal subgroup of P")
    cosets = right_cosets(G, P, K)
    coset_of = {}
    for c, (_, m) in enumerate(cosets):
        for x in G.members(m):
            coset_of[x] = c
    reps = [r for r, _ in cosets]
    t = G.table
    d = len(cosets)
    perm_of = {}
    for p in G.members(P):
        perm_of[p] = Perm(tuple(coset_of[int(t[r, p])] for r in reps))
    gens = [perm_of[p] for p in G.gens_of(P)]
    Q = FiniteGroup(gens, degree=d, name=None)
    project = [-1] * G.order
    for p, perm in perm_of.items():
        project[p] = Q.index[perm]
    return Quotient(G, P, K, Q, tuple(project))


# -- isomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class Isomorphism:
    source: FiniteGroup = field(compare=False, repr=False)
    target: FiniteGroup = field(compare=False, repr=False)
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def then(self, other: Isomorphism) -> Isomorphism:
        """Right-action composite: first ``self``, then ``other``."""
        o = other.map
        return Isomorphism(self.source, other.target, tuple(o[x] for x in self.map))

    def inverse(self) -> Isomorphism:
        inv = [0] * len(self.map)
        for i, j in enumerate(self.map):
            inv[j] = i
        return Isomorphism(self.target, self.source, tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.map))

    def image(self, mask: int) -> int:
        return FiniteGroup.mask_of(self.map[i] for i in FiniteGroup.members(mask))


def class_sizes(G: FiniteGroup) -> tuple[int, ...]:
    got = G.cache.get("class_sizes")
    if got is None:
        conj = G.conj
        got = tuple(len(set(conj[:, u].tolist())) for u in range(G.order))
        G.cache["class_sizes"] = got
    return got


def _fingerprints(G: FiniteGroup) -> list[tuple[int, int]]:
    return list(zip(G.element_orders, class_sizes(G)))


def _extend(U1: FiniteGroup, U2: FiniteGroup, gens, images) -> dict[int, int] | None:
    """Extend a generator assignment along the Cayley graph; None if inconsistent."""
    t1, t2 = U1.table, U2.table
    phi = {U1.identity: U2.identity}
    queue = [U1.identity]
    for x in queue:
        y = phi[x]
        for g, h in zip(gens, images):
            x2 = int(t1[x, g])
            y2 = int(t2[y, h])
            got = phi.get(x2)
            if got is None:
                phi[x2] = y2
                queue.append(x2)
            elif got != y2:
                return None
    return phi


def _search(U1: FiniteGroup, U2: FiniteGroup, first_only: bool) -> list[tuple[int, ...]]:
    if U1.order != U2.order:
        return []
    f1, f2 = _fingerprints(U1), _fingerprints(U2)
    if Counter(f1) != Counter(f2):
        return []
    gens = list(U1.gens_of(U1.all_mask))
    if not gens:
        return [tuple([U2.identity] * U1.order)] if U1.order == 1 else []
    cands = [[j for j in range(U2.order) if f2[j] == f1[g]] for g in gens]
    found: list[tuple[int, ...]] = []

    def rec(k: int, images: list[int]) -> bool:
        if k == len(gens):
            phi = _extend(U1, U2, gens, images)
            if phi is None or len(phi) != U1.order or len(set(phi.values())) != U1.order:
                return False
            found.append(tuple(phi[i] for i in range(U1.order)))
            return first_only
        for c in cands[k]:
            images.append(c)
            phi = _extend(U1, U2, gens[: k + 1], images)
            if phi is not None and len(set(phi.values())) == len(phi):
                if rec(k + 1, images):
                    return True
            images.pop()
        return False

    rec(0, [])
    return found


def find_isomorphism(U1: FiniteGroup, U2: FiniteGroup) -> Isomorphism | None:
    """Some isomorphism ``U1 -> U2``, or None (deterministic backtracking)."""
    res = _search(U1, U2, first_only=True)
    return Isomorphism(U1, U2, res[0]) if res else None


def all_isomorphisms(U1: FiniteGroup, U2: FiniteGroup) -> list[Isomorphism]:
    return [Isomorphism(U1, U2, m) for m in sorted(_search(U1, U2, first_only=False))]


@dataclass
class AutomorphismGroup:
    """``Aut(U)`` with ``Inn(U)`` and a transversal of ``Out(U) = Aut/Inn``."""

    group: FiniteGroup
    auts: list[Isomorphism]
    inner: list[Isomorphism]
    out_transversal: list[Isomorphism]

    @cached_property
    def position(self) -> dict[tuple[int, ...], int]:
        return {a.map: i for i, a in enumerate(self.auts)}

    @cached_property
    def compose_table(self) -> list[list[int]]:
        pos = self.position
        return [[pos[a.then(b).map] for b in self.auts] for a in self.auts]

    @cached_property
    def inverse_index(self) -> list[int]:
        pos = self.position
        return [pos[a.inverse().map] for a in self.auts]

    @cached_property
    def inner_indices(self) -> frozenset[int]:
        return frozenset(self.position[a.map] for a in self.inner)

    @property
    def order(self) -> int:
        return len(self.auts)

    def index_of(self, a: Isomorphism | tuple[int, ...]) -> int:
        return self.position[a.map if isinstance(a, Isomorphism) else a]

    def out_class(self, i: int) -> int:
        """Position in ``out_transversal`` of the ``Inn``-coset containing automorphism ``i``."""
        pos = self.position
        ct = self.compose_table
        reps = [pos[t.map] for t in self.out_transversal]
        for k, r in enumerate(reps):
            # i in Inn * r  iff  i * r^-1 in Inn
            if ct[i][self.inverse_index[r]] in self.inner_indices:
                return k
        raise AssertionError("automorphism outside every Inn-coset")


def automorphisms(U: FiniteGroup) -> AutomorphismGroup:
    got = U.cache.get("automorphisms")
    if got is not None:
        return got
    check_bound(U)
    auts = all_isomorphisms(U, U)
    conj = U.conj
    inner_maps = sorted({tuple(int(x) for x in conj[g]) for g in range(U.order)})
    inner = [Isomorphism(U, U, m) for m in inner_maps]
    inner_set = set(inner_maps)
    covered: set[tuple[int, ...]] = set()
    transversal = []
    for a in auts:
        if a.map in covered:
            continue
        transversal.append(a)
        for i in inner_maps:
            covered.add(tuple(a.map[x] for x in i))
    assert inner_set <= {a.map for a in auts}
    got = AutomorphismGroup(U, auts, inner, transversal)
    U.cache["automorphisms"] = got
    return got


# -- isomorphism types -------------------------------------------------------


@dataclass(frozen=True)
class IsoType:
    """A registered isomorphism type with a fixed model group."""

    name: str
    model: FiniteGroup = field(compare=False, repr=False)
    rank: int = 0

    @property
    def order(self) -> int:
        return self.model.order

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.model.order, self.rank)


_NAMED: dict[str, IsoType] = {}
_UNNAMED: list[IsoType] = []


def _named_type(name: str, rank: int) -> IsoType:
    t = _NAMED.get(name)
    if t is None:
        t = IsoType(name, catalogue.by_name(name), rank)
        _NAMED[name] = t
    return t


def isotype(Q: FiniteGroup) -> tuple[IsoType, Isomorphism]:
    """Identify ``Q`` with a registered type; returns the type and an isomorphism onto its model."""
    for rank, (name, order) in enumerate(catalogue.NAMED_TYPES):
        if order != Q.order:
            continue
        t = _named_type(name, rank)
        iso = find_isomorphism(Q, t.model)
        if iso is not None:
            return t, iso
    for t in _UNNAMED:
        if t.order == Q.order:
            iso = find_isomorphism(Q, t.model)
            if iso is not None:
                return t, iso
    t = IsoType(f"U{Q.order}_{len(_UNNAMED)}", Q, 1000 + len(_UNNAMED))
    _UNNAMED.append(t)
    return t, Isomorphism(Q, Q, tuple(range(Q.order)))


def identify(G: FiniteGroup) -> str:
    return isotype(G)[0].name
