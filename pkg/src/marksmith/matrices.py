"""Exact rational matrices with row/column labels, and the class-collapse helpers.

Entries are :class:`fractions.Fraction`; nothing in the package uses floats.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence


class CompatibilityError(ValueError):
    """A matrix is not compatible with the equivalence or action it is collapsed along."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(int(x)) if not isinstance(x, float) else _no_float(x)


def _no_float(x):
    raise TypeError(f"float entry {x!r}; use exact values")


@dataclass(frozen=True)
class LabeledMatrix:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.rows):
            raise ValueError("row label count does not match the matrix")
        if any(len(r) != len(self.cols) for r in self.entries):
            raise ValueError("column label count does not match the matrix")

    @classmethod
    def build(cls, rows: Iterable[str], cols: Iterable[str], entries) -> LabeledMatrix:
        return cls(tuple(rows), tuple(cols), tuple(tuple(_frac(x) for x in r) for r in entries))

    @classmethod
    def square(cls, labels: Iterable[str], entries) -> LabeledMatrix:
        labels = tuple(labels)
        return cls.build(labels, labels, entries)

    @classmethod
    def zeros(cls, rows: Sequence[str], cols: Sequence[str]) -> LabeledMatrix:
        z = Fraction(0)
        return cls(tuple(rows), tuple(cols), tuple((z,) * len(cols) for _ in rows))

    @classmethod
    def identity(cls, labels: Sequence[str]) -> LabeledMatrix:
        n = len(labels)
        return cls.square(labels, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, labels: Sequence[str], values: Sequence) -> LabeledMatrix:
        n = len(labels)
        return cls.square(labels, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def entry(self, row: str, col: str) -> Fraction:
        return self.entries[self.rows.index(row)][self.cols.index(col)]

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: LabeledMatrix) -> LabeledMatrix:
        if len(self.cols) != len(other.rows):
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols != other.rows:
            raise ValueError("column labels of the left factor differ from row labels of the right factor")
        m = len(other.cols)
        out = []
        for row in self.entries:
            acc = [Fraction(0)] * m
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return LabeledMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: LabeledMatrix) -> LabeledMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return LabeledMatrix(
            self.rows, self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def scaled(self, c) -> LabeledMatrix:
        c = _frac(c)
        return LabeledMatrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def transpose(self) -> LabeledMatrix:
        return LabeledMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else ())

    def relabel(self, rows: Sequence[str] | None = None, cols: Sequence[str] | None = None) -> LabeledMatrix:
        return LabeledMatrix(tuple(rows or self.rows), tuple(cols or self.cols), self.entries)

    def permuted(self, rows: Sequence[str], cols: Sequence[str] | None = None) -> LabeledMatrix:
        """Reorder rows and columns by label (columns default to the row order)."""
        cols = rows if cols is None else cols
        ri = [self.rows.index(r) for r in rows]
        ci = [self.cols.index(c) for c in cols]
        return LabeledMatrix(
            tuple(rows), tuple(cols), tuple(tuple(self.entries[i][j] for j in ci) for i in ri)
        )

    def submatrix(self, rows: Sequence[str], cols: Sequence[str] | None = None) -> LabeledMatrix:
        return self.permuted(rows, cols)

    def is_lower_triangular(self) -> bool:
        return all(not self.entries[i][j] for i in range(len(self.rows)) for j in range(i + 1, len(self.cols)))

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "entries": [[_json_entry(x) for x in r] for r in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json_obj(cls, obj: dict) -> LabeledMatrix:
        return cls.build(obj["rows"], obj["cols"], obj["entries"])

    @classmethod
    def from_json(cls, text: str) -> LabeledMatrix:
        return cls.from_json_obj(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.cols))
        for label, r in zip(self.rows, self.entries):
            w.writerow([label] + [str(x) for x in r])
        return buf.getvalue()

    def to_text(self) -> str:
        """Aligned text; zeros print as ``.``."""
        cells = [[str(x) if x else "." for x in r] for r in self.entries]
        lw = max((len(r) for r in self.rows), default=0)
        widths = [
            max([len(c)] + [len(cells[i][j]) for i in range(len(cells))]) for j, c in enumerate(self.cols)
        ]
        lines = [" " * lw + " | " + " ".join(c.rjust(w) for c, w in zip(self.cols, widths))]
        lines.append("-" * len(lines[0]))
        for label, r in zip(self.rows, cells):
            lines.append(label.ljust(lw) + " | " + " ".join(x.rjust(w) for x, w in zip(r, widths)))
        return "\n".join(lines) + "\n"


def _json_entry(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def block_sum(blocks: Sequence[LabeledMatrix], order: Sequence[str] | None = None) -> LabeledMatrix:
    """Direct sum of square blocks, optionally permuted into a global label order."""
    labels = [r for b in blocks for r in b.rows]
    if len(set(labels)) != len(labels):
        raise ValueError("blocks share labels")
    where = {r: (bi, i) for bi, b in enumerate(blocks) for i, r in enumerate(b.rows)}
    order = list(order) if order is not None else labels
    if sorted(order) != sorted(labels):
        raise ValueError("label order does not cover the blocks")
    z = Fraction(0)
    rows = []
    for r in order:
        br, i = where[r]
        row = []
        for c in order:
            bc, j = where[c]
            row.append(blocks[br].entries[i][j] if br == bc else z)
        rows.append(tuple(row))
    return LabeledMatrix(tuple(order), tuple(order), tuple(rows))


def kron(a: LabeledMatrix, b: LabeledMatrix, sep: str = "x") -> LabeledMatrix:
    rows = [f"{r}{sep}{s}" for r in a.rows for s in b.rows]
    cols = [f"{r}{sep}{s}" for r in a.cols for s in b.cols]
    entries = [[x * y for x in ra for y in rb] for ra in a.entries for rb in b.entries]
    return LabeledMatrix(tuple(rows), tuple(cols), tuple(tuple(r) for r in entries))


# -- equivalences and class collapse ----------------------------------------


@dataclass(frozen=True)
class EquivalenceOnIndex:
    """A partition of ``range(n)`` with one chosen representative per class."""

    n: int
    classes: tuple[tuple[int, ...], ...]
    transversal: tuple[int, ...]

    def __post_init__(self):
        seen = sorted(i for c in self.classes for i in c)
        if seen != list(range(self.n)):
            raise ValueError("classes must partition the index set")
        if len(self.transversal) != len(self.classes):
            raise ValueError("transversal must pick one element per class")
        for t, c in zip(self.transversal, self.classes):
            if t not in c:
                raise ValueError("transversal element outside its class")

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]], transversal: Sequence[int] | None = None):
        classes = tuple(tuple(c) for c in classes)
        if transversal is None:
            transversal = tuple(min(c) for c in classes)
        return cls(n, classes, tuple(transversal))

    @classmethod
    def from_orbits(cls, n: int, perms: Sequence[Sequence[int]]) -> EquivalenceOnIndex:
        """Orbits of the group generated by index permutations; classes in order of least element."""
        seen = [False] * n
        classes = []
        for i in range(n):
            if seen[i]:
                continue
            orbit = [i]
            seen[i] = True
            for x in orbit:
                for p in perms:
                    y = p[x]
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
            classes.append(tuple(sorted(orbit)))
        return cls.from_classes(n, classes)

    def class_of(self) -> list[int]:
        out = [0] * self.n
        for k, c in enumerate(self.classes):
            for i in c:
                out[i] = k
        return out


def rc_matrices(eq: EquivalenceOnIndex, labels: Sequence[str] | None = None,
                class_labels: Sequence[str] | None = None) -> tuple[LabeledMatrix, LabeledMatrix]:
    """Row-summing ``R`` (classes x items) and column-picking ``C`` (items x classes)."""
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(eq.n)]
    class_labels = list(class_labels) if class_labels is not None else [labels[t] for t in eq.transversal]
    R = [[int(i in c) for i in range(eq.n)] for c in eq.classes]
    C = [[int(i == t) for t in eq.transversal] for i in range(eq.n)]
    return LabeledMatrix.build(class_labels, labels, R), LabeledMatrix.build(labels, class_labels, C)


def collapse(a: LabeledMatrix, eq: EquivalenceOnIndex, class_labels: Sequence[str] | None = None,
             check: bool = True) -> LabeledMatrix:
    """``R A C``; with ``check`` the result must not depend on the transversal."""
    R, C = rc_matrices(eq, a.rows, class_labels)
    out = R @ a @ C
    if check:
        for k, c in enumerate(eq.classes):
            for alt in c:
                col = [sum((a.entries[i][alt] for i in cc), Fraction(0)) for cc in eq.classes]
                if any(col[x] != out.entries[x][k] for x in range(len(eq.classes))):
                    raise CompatibilityError(
                        f"matrix not compatible: column {a.cols[alt]} differs from class representative"
                    )
    return out


def kron_over_group(a1: LabeledMatrix, a2: LabeledMatrix,
                    perms1: Sequence[Sequence[int]], perms2: Sequence[Sequence[int]],
                    sep: str = "x") -> tuple[LabeledMatrix, EquivalenceOnIndex]:
    """``R(Γ) (A1 ⊗ A2) C(Γ)`` for Γ acting diagonally on index pairs.

    ``perms1[k]`` and ``perms2[k]`` give the action of the ``k``-th element (or
    generator) of Γ on the row/column indices of ``a1`` and ``a2``.  Both
    matrices must be invariant under that action.
    """
    for A, perms in ((a1, perms1), (a2, perms2)):
        n = len(A.rows)
        for p in perms:
            for i in range(n):
                for j in range(n):
                    if A.entries[p[i]][p[j]] != A.entries[i][j]:
                        raise CompatibilityError("matrix is not invariant under the group action")
    n2 = len(a2.rows)
    pair_perms = [[p1[i] * n2 + p2[j] for i in range(len(a1.rows)) for j in range(n2)]
                  for p1, p2 in zip(perms1, perms2)]
    k = kron(a1, a2, sep)
    eq = EquivalenceOnIndex.from_orbits(len(k.rows), pair_perms)
    return collapse(k, eq), eq


def _to_sympy(rows):
    import sympy

    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in map(_frac, r)] for r in rows])


def _from_sympy(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def invert(a: LabeledMatrix) -> LabeledMatrix:
    """Exact inverse over the rationals."""
    if len(a.rows) != len(a.cols):
        raise ValueError("matrix is not square")
    m = _to_sympy(a.entries)
    if m.det() == 0:
        raise ZeroDivisionError("matrix is singular")
    inv = m.inv()
    n = len(a.rows)
    return LabeledMatrix(a.cols, a.rows, tuple(tuple(_from_sympy(inv[i, j]) for j in range(n)) for i in range(n)))


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of rational row vectors."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return 0
    return int(_to_sympy(vectors).rank())


def from_function(rows: Sequence[str], cols: Sequence[str], f: Callable[[int, int], object]) -> LabeledMatrix:
    return LabeledMatrix.build(rows, cols, [[f(i, j) for j in range(len(cols))] for i in range(len(rows))])
