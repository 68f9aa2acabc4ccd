"""Permutation groups with indexed elements.

Elements of a :class:`FiniteGroup` are kept in canonical order (lexicographic
on image tuples) and addressed by their position in that order.  Subsets of a
group, in particular subgroups, are ``int`` bitmasks over those positions:
bit ``i`` is set iff element ``i`` belongs to the subset.  Intersection is
``&``, containment is ``a & b == a`` and the order is ``mask.bit_count()``.

Permutations act on the right, ``x^(pq) = (x^p)^q``, and conjugation is
``h^g = g^-1 h g``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from marksmith import kernels


class GroupError(ValueError):
    """Invalid group-theoretic input (bad permutation, non-subgroup, ...)."""


class NotASubgroupError(GroupError):
    pass


class BoundExceeded(RuntimeError):
    """A computation would exceed the configured group-order bound."""


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of ``{0, ..., n-1}`` stored as its image tuple.

    Points are 0-based internally; :meth:`from_cycles` and :meth:`cycles`
    use the customary 1-based notation.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Perm:
        """Parse cycle notation such as ``(1,2)(3,4)``; ``()`` is the identity."""
        images = list(range(degree))
        text = text.replace(" ", "")
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))*", text):
            raise GroupError(f"malformed cycle notation {text!r}")
        for body in re.findall(r"\(([^)]*)\)", text):
            if not body:
                continue
            pts = [int(t) - 1 for t in body.split(",")]
            if len(set(pts)) != len(pts) or min(pts) < 0 or max(pts) >= degree:
                raise GroupError(f"bad cycle ({body}) for degree {degree}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Perm) -> Perm:
        if self.degree != other.degree:
            raise GroupError("degree mismatch")
        o = other.images
        return Perm(tuple(o[i] for i in self.images))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def cycles(self) -> str:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append("(" + ",".join(str(p + 1) for p in cyc) + ")")
        return "".join(out) or "()"

    def __repr__(self) -> str:
        return f"Perm({self.cycles()})"


def closure(generators: Sequence[Perm]) -> list[Perm]:
    """All elements of the group generated by ``generators``, canonically sorted."""
    generators = list(generators)
    if not generators:
        raise GroupError("closure of an empty generator list needs a degree")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise GroupError("generators have different degrees")
    one = Perm.identity(degree)
    seen = {one}
    queue = [one]
    for x in queue:
        for g in generators:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def _iter_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class FiniteGroup:
    """A finite permutation group with a multiplication table over element indices."""

    def __init__(
        self,
        generators: Iterable[Perm],
        *,
        degree: int | None = None,
        name: str | None = None,
        elements: Sequence[Perm] | None = None,
        table: np.ndarray | None = None,
    ):
        self.generators = tuple(generators)
        if degree is None:
            if not self.generators:
                raise GroupError("degree required for a group without generators")
            degree = self.generators[0].degree
        if any(g.degree != degree for g in self.generators):
            raise GroupError("generators have different degrees")
        self.degree = degree
        self.name = name
        if elements is not None:
            self.__dict__["elements"] = tuple(elements)
        if table is not None:
            self.__dict__["table"] = np.asarray(table, dtype=np.int32)
        self.cache: dict = {}
        self._prepared: dict = {}
        self._gens: dict[int, tuple[int, ...]] = {}

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or '?'} of order {self.order}>"

    def __len__(self) -> int:
        return self.order

    # -- elements -------------------------------------------------------

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        gens = self.generators or (Perm.identity(self.degree),)
        return tuple(closure(gens))

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identity(self) -> int:
        return self.index[Perm.identity(self.degree)]

    @cached_property
    def table(self) -> np.ndarray:
        idx = self.index
        els = self.elements
        n = len(els)
        t = np.empty((n, n), dtype=np.int32)
        for i, a in enumerate(els):
            t[i] = [idx[a * b] for b in els]
        return t

    @cached_property
    def inverse(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == self.identity)
        inv = np.empty(self.order, dtype=np.int32)
        inv[rows] = cols
        return inv

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, h]`` is the index of ``g^-1 h g``."""
        t = self.table
        left = t[self.inverse, :]
        return t[left, np.arange(self.order, dtype=np.int32)[:, None]].astype(np.int32)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        t = self.table
        e = self.identity
        for i in range(self.order):
            k, x = 1, i
            while x != e:
                x = t[x, i]
                k += 1
            out.append(k)
        return tuple(out)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def prepared(self):
        """(table, conj, inverse) in the representation of the active kernel backend."""
        b = kernels.backend
        got = self._prepared.get(b.NAME)
        if got is None:
            got = (b.prepare_table(self.table), b.prepare_table(self.conj), b.prepare_vector(self.inverse))
            self._prepared[b.NAME] = got
        return got

    # -- subsets as bitmasks ---------------------------------------------

    @property
    def all_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def trivial_mask(self) -> int:
        return 1 << self.identity

    @staticmethod
    def members(mask: int) -> list[int]:
        return _iter_bits(mask)

    @staticmethod
    def mask_of(indices: Iterable[int]) -> int:
        m = 0
        for i in indices:
            m |= 1 << i
        return m

    @staticmethod
    def key(mask: int) -> tuple[int, ...]:
        """Canonical comparison key: the sorted element indices."""
        return tuple(_iter_bits(mask))

    def perms(self, mask: int) -> list[Perm]:
        return [self.elements[i] for i in _iter_bits(mask)]

    def generate(self, gens: Iterable[int]) -> int:
        table, _, _ = self.prepared()
        return kernels.backend.closure(table, list(gens), self.identity)

    def gens_of(self, mask: int) -> tuple[int, ...]:
        """A small generating set of the subgroup ``mask`` (greedy, deterministic)."""
        got = self._gens.get(mask)
        if got is not None:
            return got
        orders = self.element_orders
        cands = sorted(_iter_bits(mask), key=lambda i: (-orders[i], i))
        gens: list[int] = []
        current = self.trivial_mask
        for i in cands:
            if current == mask:
                break
            if not current >> i & 1:
                gens.append(i)
                current = self.generate(gens)
        if current != mask:
            raise NotASubgroupError("element set is not closed under multiplication")
        got = tuple(gens)
        self._gens[mask] = got
        return got

    def is_subgroup(self, mask: int) -> bool:
        if not mask >> self.identity & 1:
            return False
        try:
            self.gens_of(mask)
        except NotASubgroupError:
            return False
        return True

    def join(self, a: int, b: int) -> int:
        return self.generate(self.gens_of(a) + self.gens_of(b))

    def conjugate(self, mask: int, g: int) -> int:
        """``mask^g = {g^-1 h g}``."""
        _, conj, _ = self.prepared()
        return kernels.backend.conjugate(conj, _iter_bits(mask), g)

    def subgroup(self, perms: Iterable[Perm]) -> int:
        """Subgroup mask generated by the given permutations of this group."""
        try:
            idx = [self.index[p] for p in perms]
        except KeyError as exc:
            raise GroupError(f"{exc.args[0]!r} is not an element of the group") from None
        return self.generate(idx)

    def product_set(self, a: int, b: int) -> int:
        """The set ``AB``; a subgroup when one factor normalizes the other."""
        t = self.table
        out = 0
        bs = _iter_bits(b)
        for x in _iter_bits(a):
            row = t[x]
            for y in bs:
                out |= 1 << int(row[y])
        return out


@dataclass(frozen=True)
class Embedding:
    """An injective homomorphism given by its element table."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...] = field(repr=False)

    def __call__(self, i: int) -> int:
        return self.map[i]

    def image(self, mask: int) -> int:
        return FiniteGroup.mask_of(self.map[i] for i in _iter_bits(mask))


class ProductGroup(FiniteGroup):
    """``G1 x G2`` acting on disjoint point sets; element ``(a, b)`` has index ``a*|G2| + b``."""

    def __init__(self, g1: FiniteGroup, g2: FiniteGroup, name: str | None = None):
        n1, n2 = g1.order, g2.order
        d1 = g1.degree
        shift = tuple
        elements = [
            Perm(a.images + shift(d1 + x for x in b.images)) for a in g1.elements for b in g2.elements
        ]
        t1 = g1.table.astype(np.int64)
        t2 = g2.table.astype(np.int64)
        table = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(n1 * n2, n1 * n2)
        gens = [elements[i * n2 + g2.identity] for i in g1.gens_of(g1.all_mask)]
        gens += [elements[g1.identity * n2 + j] for j in g2.gens_of(g2.all_mask)]
        super().__init__(
            gens,
            degree=g1.degree + g2.degree,
            name=name or f"{g1.name or '?'}x{g2.name or '?'}",
            elements=elements,
            table=table,
        )
        self.factors = (g1, g2)

    def pair(self, a: int, b: int) -> int:
        return a * self.factors[1].order + b

    def split(self, i: int) -> tuple[int, int]:
        return divmod(i, self.factors[1].order)

    def project(self, mask: int, which: int) -> int:
        """Image of a subset under the projection onto factor ``which`` (0 or 1)."""
        out = 0
        for i in _iter_bits(mask):
            out |= 1 << self.split(i)[which]
        return out

    def kernel(self, mask: int, which: int) -> int:
        """``{a : (a,1) in L}`` for ``which=0``, ``{b : (1,b) in L}`` for ``which=1``."""
        e1 = self.factors[0].identity
        e2 = self.factors[1].identity
        out = 0
        for i in _iter_bits(mask):
            a, b = self.split(i)
            if which == 0 and b == e2:
                out |= 1 << a
            elif which == 1 and a == e1:
                out |= 1 << b
        return out

    def box(self, m1: int, m2: int) -> int:
        """The subgroup ``A x B``."""
        n2 = self.factors[1].order
        out = 0
        bs = _iter_bits(m2)
        for a in _iter_bits(m1):
            base = a * n2
            for b in bs:
                out |= 1 << (base + b)
        return out


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> tuple[ProductGroup, Embedding, Embedding]:
    prod = ProductGroup(g1, g2)
    e1 = Embedding(g1, prod, tuple(prod.pair(a, g2.identity) for a in range(g1.order)))
    e2 = Embedding(g2, prod, tuple(prod.pair(g1.identity, b) for b in range(g2.order)))
    return prod, e1, e2


def _check_subgroup(G: FiniteGroup, H: int) -> None:
    if H & ~G.all_mask or not G.is_subgroup(H):
        raise NotASubgroupError("not a subgroup of the group")


def normalizer(G: FiniteGroup, H: int) -> int:
    """``N_G(H)`` as a bitmask."""
    cached = G.cache.setdefault("normalizer", {})
    got = cached.get(H)
    if got is None:
        _check_subgroup(G, H)
        _, conj, _ = G.prepared()
        got = kernels.backend.conjugators(conj, G.gens_of(H), H, range(G.order))
        cached[H] = got
    return got


def normalizer_in(G: FiniteGroup, H: int, within: int) -> int:
    """``N_W(H)`` for a subset ``W`` of ``G`` given as a mask."""
    return normalizer(G, H) & within


def centralizer(G: FiniteGroup, H: int) -> int:
    """``C_G(H)`` as a bitmask."""
    _check_subgroup(G, H)
    gens = list(G.gens_of(H))
    if not gens:
        return G.all_mask
    ok = np.all(G.conj[:, gens] == np.asarray(gens, dtype=np.int32), axis=1)
    return FiniteGroup.mask_of(np.nonzero(ok)[0].tolist())


def center(G: FiniteGroup) -> int:
    return centralizer(G, G.all_mask)


def right_cosets(G: FiniteGroup, P: int, K: int) -> list[tuple[int, int]]:
    """Right cosets ``K x`` partitioning ``P`` as ``(representative, mask)`` pairs.

    The representative is the smallest element of its coset in canonical order.
    """
    _check_subgroup(G, P)
    _check_subgroup(G, K)
    if K & ~P:
        raise GroupError("K is not contained in P")
    t = G.table
    ks = _iter_bits(K)
    out = []
    remaining = P
    while remaining:
        x = (remaining & -remaining).bit_length() - 1
        coset = 0
        for k in ks:
            coset |= 1 << int(t[k, x])
        out.append((x, coset))
        remaining &= ~coset
    return out


def is_normal(G: FiniteGroup, K: int, P: int) -> bool:
    """Whether ``K`` is a normal subgroup of ``P``."""
    return K & P == K and P & normalizer(G, K) == P
