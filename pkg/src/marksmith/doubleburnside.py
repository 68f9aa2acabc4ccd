"""The rational double Burnside algebra ``QB(G, G)`` and its ghost map for ``G = S3``.

The natural basis ``b_i = [G x G / L_i]`` follows the product classes ``L1, L2, ...``.
Products come from the Mackey formula

    b_i · b_j = sum over x in p2(L_i) \\ G / p1(L_j) of [G x G / (L_i^(1,x) * L_j)]

with right conjugation ``L^(1,x) = (1,x)^-1 L (1,x)``.  A brute-force tensor
product of coset bisets is kept alongside as the oracle for that convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from marksmith.catalogue import symmetric
from marksmith.groups import FiniteGroup, direct_product
from marksmith.matrices import (
    CompatibilityError,
    EquivalenceOnIndex,
    LabeledMatrix,
    collapse,
    invert,
    rank,
)
from marksmith.product import conjugate_pair, identify_class, product_classes, star_relational
from marksmith.sections import Mode, section_class_of

# Hand-chosen diagonal corrections for S3, in the L1..L22 order.
S3_D1 = (1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 6, 6, 6, 6, 1, 1, 6, 6, 1, 1)
S3_D2 = (1, 1, 1, 1, 3, 3, 3, 3, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3, 1, 1, 2, 6)

# Placement of the c-coordinates x_1..x_22 in the 8x8 ghost matrix (1-based indices).
S3_PATTERN: dict[tuple[int, int], int] = {}
for _r in range(3):
    for _c in range(4):
        S3_PATTERN[(_r, _c)] = 4 * _r + _c + 1
for _c in range(4):
    S3_PATTERN[(7, _c)] = 13 + _c
S3_PATTERN.update({(3, 3): 22, (5, 5): 22, (7, 7): 22, (4, 4): 17, (4, 5): 18,
                   (6, 6): 21, (7, 4): 19, (7, 5): 20})

S3_RADICAL = (4, 8, 12, 13, 14, 15, 16, 18, 19, 20)


def _vec(n: int, items) -> list[int]:
    v = [0] * n
    for k, c in items:
        v[k] += c
    return v


@dataclass
class DoubleBurnside:
    """``QB(G, G)`` on the basis of transitive bisets, with the constructions used for its ghost map."""

    G: FiniteGroup

    def __post_init__(self):
        self.prod = direct_product(self.G, self.G)[0]
        self.classes = product_classes(self.prod)
        self.n = len(self.classes)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.classes]

    # -- multiplication ------------------------------------------------------

    def double_coset_reps(self, A: int, B: int) -> list[int]:
        """Least element of each double coset ``A x B`` in ``G``."""
        G = self.G
        t = G.table
        a_el, b_el = FiniteGroup.members(A), FiniteGroup.members(B)
        covered = 0
        reps = []
        for x in range(G.order):
            if covered >> x & 1:
                continue
            reps.append(x)
            for a in a_el:
                ax = int(t[a, x])
                for b in b_el:
                    covered |= 1 << int(t[ax, b])
        return reps

    def mackey_mul(self, i: int, j: int, inverse_conjugation: bool = False) -> list[int]:
        """Coordinates of ``b_i · b_j`` (0-based class indices).

        ``inverse_conjugation`` conjugates by ``(1, x^-1)`` instead; it exists
        only so the tests can show that choice disagrees with the tensor oracle.
        """
        P = self.prod
        L, M = self.classes[i].representative, self.classes[j].representative
        e = self.G.identity
        terms = []
        for x in self.double_coset_reps(P.project(L, 1), P.project(M, 0)):
            y = int(self.G.inverse[x]) if inverse_conjugation else x
            Lx = conjugate_pair(P, L, e, y)
            terms.append((identify_class(P, star_relational(P, Lx, P, M, P)), 1))
        return _vec(self.n, terms)

    def tensor_oracle(self, i: int, j: int) -> list[int]:
        """``b_i · b_j`` by building ``X x_G Y`` for the coset bisets and splitting it into orbits.

        ``X = (G x G)/L`` (left cosets) is a biset via ``g·x·h = (g, h^-1)x``.
        """
        P = self.prod
        G = self.G
        t = P.table
        inv = G.inverse

        def cosets(L):
            reps, of = [], {}
            for u in range(P.order):
                if u in of:
                    continue
                k = len(reps)
                reps.append(u)
                for l in FiniteGroup.members(L):
                    of[int(t[u, l])] = k
            return reps, of

        xr, xof = cosets(self.classes[i].representative)
        yr, yof = cosets(self.classes[j].representative)
        e = G.identity

        def left(u, reps, of, k):
            return of[int(t[u, reps[k]])]

        nx, ny = len(xr), len(yr)
        # H-orbits on X x Y: (x, y) ~ (x·h, h^-1·y)
        pt = [-1] * (nx * ny)
        npts = 0
        for x in range(nx):
            for y in range(ny):
                if pt[x * ny + y] >= 0:
                    continue
                for h in range(G.order):
                    xh = left(P.pair(e, int(inv[h])), xr, xof, x)
                    hy = left(P.pair(int(inv[h]), e), yr, yof, y)
                    pt[xh * ny + hy] = npts
                npts += 1
        # G x K acts by (g, k)·[x, y] = [(g, 1)x, (1, k)y]
        seen = [False] * npts
        terms = []
        for start in range(nx * ny):
            p0 = pt[start]
            if seen[p0]:
                continue
            x0, y0 = divmod(start, ny)
            stab = 0
            for u in range(P.order):
                g, k = P.split(u)
                q = pt[left(P.pair(g, e), xr, xof, x0) * ny + left(P.pair(e, k), yr, yof, y0)]
                seen[q] = True
                if q == p0:
                    stab |= 1 << u
            terms.append((identify_class(P, stab), 1))
        return _vec(self.n, terms)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``T[i, j, l]``: coefficient of ``b_l`` in ``b_i · b_j``."""
        T = np.zeros((self.n, self.n, self.n), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                T[i, j] = self.mackey_mul(i, j)
        return T

    def associativity_defect(self) -> int:
        """Number of ``(i, j, k, m)`` where ``(b_i b_j) b_k`` and ``b_i (b_j b_k)`` differ."""
        T = self.structure_constants
        n = self.n
        flat = T.reshape(n, n * n)
        pairs = T.reshape(n * n, n)
        bad = 0
        for i in range(n):  # one slab at a time keeps memory at n^3
            left = T[i] @ flat  # (b_i b_j) b_k, indexed [j, k*n + m]
            right = pairs @ T[i]  # b_i (b_j b_k): sum_l T[j,k,l] T[i,l,m], indexed [j*n + k, m]
            bad += int(np.count_nonzero(left.reshape(n, n, n) != right.reshape(n, n, n)))
        return bad

    def identity_index(self) -> int | None:
        T = self.structure_constants
        eye = np.eye(self.n, dtype=np.int64)
        for e in range(self.n):
            if (T[e] == eye).all() and (T[:, e] == eye).all():
                return e
        return None

    # -- the base change M' ------------------------------------------------

    def incidence(self, mode: Mode) -> LabeledMatrix:
        from marksmith.marks import cim_product

        return cim_product(self.prod, mode)

    def mprime(self, D1: Sequence[int] = S3_D1, D2: Sequence[int] = S3_D2) -> LabeledMatrix:
        """``1/6 · D0 · A(≤_K) · A(≤_{P/K}) · D1 · A(≥_P) · D2``."""
        from marksmith.marks import normalizer_diagonal

        if len(D1) != self.n or len(D2) != self.n:
            raise ValueError("diagonal corrections do not match the number of classes")
        lab = self.labels
        M = (normalizer_diagonal(self.prod) @ self.incidence(Mode.K) @ self.incidence(Mode.PK)
             @ LabeledMatrix.diagonal(lab, D1) @ self.incidence(Mode.GEQ_P) @ LabeledMatrix.diagonal(lab, D2))
        return M.scaled(Fraction(1, 6))

    @cached_property
    def _mprime_rows(self) -> list[list[Fraction]]:
        return self.mprime().as_lists()

    @cached_property
    def _n_rows(self) -> list[list[Fraction]]:
        return invert(self.mprime()).as_lists()

    def c_basis(self) -> list[list[Fraction]]:
        """``c_j`` in b-coordinates: the rows of ``M'^-1``."""
        return [list(r) for r in self._n_rows]

    def to_c_coords(self, b_coords: Sequence) -> list[Fraction]:
        """c-coordinates of ``sum_i x_i b_i``: the row vector ``x · M'``."""
        Mp = self._mprime_rows
        return [sum((Fraction(b_coords[i]) * Mp[i][j] for i in range(self.n) if b_coords[i]), Fraction(0))
                for j in range(self.n)]

    def to_b_coords(self, c_coords: Sequence) -> list[Fraction]:
        N = self._n_rows
        return [sum((Fraction(c_coords[i]) * N[i][j] for i in range(self.n) if c_coords[i]), Fraction(0))
                for j in range(self.n)]

    # -- regular representations ---------------------------------------------

    def regular_b(self, j: int) -> list[list[Fraction]]:
        """Right regular matrix of ``b_j`` on the b-basis: row ``a`` holds ``b_a · b_j``."""
        T = self.structure_constants
        return [[Fraction(int(T[a, j, l])) for l in range(self.n)] for a in range(self.n)]

    def regular_in_basis(self, change: Sequence[Sequence], element_b: Sequence) -> list[list[Fraction]]:
        """Right regular matrix of an element (b-coordinates) on the basis ``d`` with ``b = change · d``."""
        n = self.n
        T = self.structure_constants
        S = [[sum((Fraction(element_b[b]) * int(T[a, b, l]) for b in range(n) if element_b[b]), Fraction(0))
              for l in range(n)] for a in range(n)]
        Mx = LabeledMatrix.square(self.labels, change)
        Ninv = invert(Mx)
        return (Ninv @ LabeledMatrix.square(self.labels, S) @ Mx).as_lists()

    @cached_property
    def regular_c(self) -> list[list[list[Fraction]]]:
        """``C_i``: right regular matrix of ``c_i`` on the c-basis."""
        Mp = self._mprime_rows
        return [self.regular_in_basis(Mp, self._n_rows[i]) for i in range(self.n)]

    # -- the ghost map ------------------------------------------------------------

    def equivalence(self) -> EquivalenceOnIndex:
        """Classes ``L`` grouped by the conjugacy class of their right Goursat section."""
        keys = [section_class_of(c.goursat.right)[0] for c in self.classes]
        groups: dict[int, list[int]] = {}
        for i, k in enumerate(keys):
            groups.setdefault(k, []).append(i)
        return EquivalenceOnIndex.from_classes(self.n, sorted(groups.values()))

    def ghost_images(self, matrices: Sequence[Sequence[Sequence]], eq: EquivalenceOnIndex | None = None
                     ) -> list[LabeledMatrix]:
        """``C(≡)^T · X · R(≡)^T`` for each matrix, after checking ``X^T`` is compatible with ``≡``."""
        eq = eq or self.equivalence()
        lab = self.labels
        names = [f"s{k + 1}" for k in range(len(eq.classes))]
        out = []
        for X in matrices:
            XT = LabeledMatrix.square(lab, X).transpose()
            out.append(collapse(XT, eq, names, check=True).transpose())
        return out

    @cached_property
    def beta_c(self) -> list[LabeledMatrix]:
        """``β'(c_i)`` for every ``i``."""
        return self.ghost_images(self.regular_c)

    def beta_prime(self, c_coords: Sequence) -> LabeledMatrix:
        """``β'`` of ``sum_i x_i c_i``."""
        imgs = self.beta_c
        names = imgs[0].rows
        k = len(names)
        acc = [[Fraction(0)] * k for _ in range(k)]
        for i, x in enumerate(c_coords):
            x = Fraction(x)
            if not x:
                continue
            E = imgs[i].entries
            for r in range(k):
                for s in range(k):
                    if E[r][s]:
                        acc[r][s] += x * E[r][s]
        return LabeledMatrix.square(names, acc)

    def beta_of_b(self, i: int) -> LabeledMatrix:
        """``β'(b_i)`` (0-based)."""
        return self.beta_prime(self._mprime_rows[i])

    def c_product(self, i: int, k: int) -> list[Fraction]:
        """c-coordinates of ``c_i · c_k``: row ``i`` of ``C_k``."""
        return list(self.regular_c[k][i])

    def homomorphism_failures(self) -> list[tuple[int, int]]:
        """Pairs ``(i, k)`` with ``β'(c_i c_k) != β'(c_i) β'(c_k)``."""
        bad = []
        imgs = self.beta_c
        for i in range(self.n):
            for k in range(self.n):
                if self.beta_prime(self.c_product(i, k)) != imgs[i] @ imgs[k]:
                    bad.append((i, k))
        return bad

    def ghost_rank(self, images: Sequence[LabeledMatrix] | None = None) -> int:
        images = images if images is not None else self.beta_c
        return rank([[x for row in m.entries for x in row] for m in images])

    # -- radical ----------------------------------------------------------------

    def _span_rank(self, vectors) -> int:
        vectors = [v for v in vectors if any(v)]
        return rank(vectors) if vectors else 0

    def radical_analysis(self, radical: Sequence[int] = S3_RADICAL) -> dict:
        """Check that the given c-basis elements (1-based) span a nilpotent two-sided ideal.

        Returns the ideal check, the nilpotency degree (least ``m`` with ``J^m = 0``),
        the quotient dimension and whether the ghost images of the radical are nilpotent.
        """
        R = [r - 1 for r in radical]
        others = [k for k in range(self.n) if k not in R]
        unit = [[Fraction(int(a == b)) for b in range(self.n)] for a in range(self.n)]
        base = self._span_rank([unit[r] for r in R])
        is_ideal = True
        for r in R:
            for k in range(self.n):
                for v in (self.c_product(r, k), self.c_product(k, r)):
                    if any(v[o] for o in others):
                        is_ideal = False
        power = [unit[r] for r in R]
        degree = 1
        cap = self.n + 1
        while any(any(v) for v in power) and degree <= cap:
            nxt = []
            for v in power:
                for r in R:
                    w = self._mul_c(v, unit[r])
                    if any(w):
                        nxt.append(w)
            power = _basis(nxt)
            degree += 1
        nilpotent_images = all(_is_nilpotent(self.beta_c[r]) for r in R)
        return {
            "radical": list(radical),
            "dimension": base,
            "is_two_sided_ideal": is_ideal,
            "nilpotency_degree": degree if not any(any(v) for v in power) else None,
            "quotient_dimension": self.n - base,
            "ghost_images_nilpotent": nilpotent_images,
        }

    def _mul_c(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
        """Product of two elements given in c-coordinates."""
        out = [Fraction(0)] * self.n
        for i, a in enumerate(u):
            if not a:
                continue
            for k, b in enumerate(v):
                if not b:
                    continue
                row = self.regular_c[k][i]
                ab = a * b
                for m, x in enumerate(row):
                    if x:
                        out[m] += ab * x
        return out

    # -- serialization --------------------------------------------------------------

    def structure_constants_json(self) -> str:
        T = self.structure_constants
        obj = {"basis": self.labels, "constants": T.tolist()}
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _basis(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """A row-echelon basis of the span, for keeping ideal powers small."""
    import sympy

    if not vectors:
        return []
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in vectors])
    R, piv = M.rref()
    return [[Fraction(int(R[i, j].p), int(R[i, j].q)) for j in range(M.cols)] for i in range(len(piv))]


def _is_nilpotent(m: LabeledMatrix) -> bool:
    P = m
    for _ in range(len(m.rows)):
        P = P @ m
    return P.is_zero()


def pattern_matrix(x: Sequence, pattern: dict[tuple[int, int], int] = S3_PATTERN, size: int = 8) -> list[list[Fraction]]:
    """The 8x8 matrix with ``x_i`` (1-based) placed by the pattern, zero elsewhere."""
    out = [[Fraction(0)] * size for _ in range(size)]
    for (r, c), i in pattern.items():
        out[r][c] = Fraction(x[i - 1])
    return out


def semisimple_projection(m: LabeledMatrix) -> tuple[list[list[Fraction]], Fraction, Fraction, Fraction]:
    """The diagonal-block part of a ghost matrix: the 3x3 block and the ``x22``, ``x17``, ``x21`` entries."""
    E = m.entries
    return [list(E[r][:3]) for r in range(3)], E[3][3], E[4][4], E[6][6]


_S3: DoubleBurnside | None = None


def s3() -> DoubleBurnside:
    """The shared ``QB(S3, S3)`` instance."""
    global _S3
    if _S3 is None:
        _S3 = DoubleBurnside(symmetric(3))
    return _S3


def tom_change(db: DoubleBurnside) -> list[list[Fraction]]:
    """The table of marks of ``G x G`` as a base change matrix."""
    from marksmith.marks import tom_product

    return tom_product(db.prod).as_lists()


def unprimed_change(db: DoubleBurnside) -> list[list[Fraction]]:
    """``D0 · A(≤_K) · A(≤_{P/K}) · A(≥_P)`` as a base change matrix."""
    from marksmith.marks import normalizer_diagonal

    return (normalizer_diagonal(db.prod) @ db.incidence(Mode.K) @ db.incidence(Mode.PK)
            @ db.incidence(Mode.GEQ_P)).as_lists()


def ghost_for_change(db: DoubleBurnside, change: Sequence[Sequence]) -> list[LabeledMatrix]:
    """Ghost images of the basis ``d`` with ``b = change · d``; raises CompatibilityError if incompatible."""
    Minv = invert(LabeledMatrix.square(db.labels, change)).as_lists()
    mats = [db.regular_in_basis(change, Minv[i]) for i in range(db.n)]
    return db.ghost_images(mats)


def ghost_for_b(db: DoubleBurnside) -> list[LabeledMatrix]:
    return db.ghost_images([db.regular_b(j) for j in range(db.n)])


__all__ = [
    "CompatibilityError",
    "DoubleBurnside",
    "S3_D1",
    "S3_D2",
    "S3_PATTERN",
    "S3_RADICAL",
    "ghost_for_b",
    "ghost_for_change",
    "pattern_matrix",
    "s3",
    "semisimple_projection",
    "tom_change",
    "unprimed_change",
]
