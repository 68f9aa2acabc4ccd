"""Matrices transcribed from the published tables, as text with ``.`` for zero.

Product-class matrices use the labels L1..L22 in order.  Section matrices
carry their own row labels.
"""

from fractions import Fraction

from marksmith.matrices import LabeledMatrix


def rows_of(text: str) -> list[list[Fraction]]:
    out = []
    for line in text.strip().splitlines():
        out.append([Fraction(0) if c == "." else Fraction(c) for c in line.split()])
    return out


def labelled(text: str) -> LabeledMatrix:
    """A square matrix whose lines start with their row label; columns repeat the row order."""
    labels, rows = [], []
    for line in text.strip().splitlines():
        label, *cells = line.split()
        labels.append(label)
        rows.append([Fraction(0) if c == "." else Fraction(c) for c in cells])
    return LabeledMatrix.square(labels, rows)


def product_labels(n: int = 22) -> list[str]:
    return [f"L{i}" for i in range(1, n + 1)]


def product_matrix(text: str) -> LabeledMatrix:
    rows = rows_of(text)
    return LabeledMatrix.square(product_labels(len(rows)), rows)


def block_matrix(blocks) -> LabeledMatrix:
    """22x22 matrix from ``(row labels as ints, lower-triangular rows)`` blocks."""
    full = [[0] * 22 for _ in range(22)]
    for labels, rows in blocks:
        for a, row in zip(labels, rows):
            for b, x in zip(labels, row):
                full[a - 1][b - 1] = x
    return LabeledMatrix.square(product_labels(), full)


# -- S3 --------------------------------------------------------------------

TOM_S3 = """
1  6 . . .
2  3 1 . .
3  2 . 2 .
G  1 1 1 1
"""

SECTIONS_P = """
(1,1) 1 . . . . . . .
(2,1) . 1 . . . . . .
(2,2) . 1 1 . . . . .
(3,1) . . . 1 . . . .
(3,3) . . . 1 1 . . .
(G,1) . . . . . 1 . .
(G,3) . . . . . 1 1 .
(G,G) . . . . . 1 1 1
"""

SECTIONS_K = """
(1,1) 1 . . . . . . .
(2,1) 3 1 . . . . . .
(3,1) 1 . 1 . . . . .
(G,1) 1 1 1 1 . . . .
(2,2) . . . . 1 . . .
(3,3) . . . . . 1 . .
(G,3) . . . . . 1 1 .
(G,G) . . . . . . . 1
"""

SECTIONS_PK = """
(1,1) 1 . . . . . . .
(2,2) 3 1 . . . . . .
(3,3) 1 . 1 . . . . .
(G,G) 1 1 1 1 . . . .
(2,1) . . . . 1 . . .
(G,3) . . . . 1 1 . .
(3,1) . . . . . . 1 .
(G,1) . . . . . . . 1
"""

SECTIONS_FULL = """
(1,1) 1 . . . . . . .
(2,2) 3 1 . . 1 . . .
(3,3) 1 . 1 . . . 1 .
(G,G) 1 1 1 1 1 1 1 1
(2,1) 3 . . . 1 . . .
(G,3) 1 . 1 . 1 1 1 1
(3,1) 1 . . . . . 1 .
(G,1) 1 . . . 1 . 1 1
"""

SECTIONS_PRIME = """
(1,1) 1 . . . . . . .
(2,2) 3 1 . . . . . .
(3,3) 1 . 1 . . . . .
(G,G) 1 1 1 1 . . . .
(2,1) 3 1 . . 1 . . .
(G,3) 1 1 1 1 1 1 . .
(3,1) 1 . 1 . . . 1 .
(G,1) 1 1 1 1 1 1 1 1
"""

# -- A5, U = C3 -------------------------------------------------------------------

A5_C3_MORPHISMS = [[1, 0, 0], [1, 1, 0], [1, 0, 1]]
A5_C3_SECTIONS = [[1, 0], [2, 1]]
A5_C3_SQUARE = [
    [1, 0, 0, 0, 0],
    [2, 1, 0, 0, 0],
    [2, 0, 1, 0, 0],
    [2, 1, 1, 1, 0],
    [2, 1, 1, 0, 1],
]

# -- S3 x S3 -----------------------------------------------------------------------

TOM = """
    36  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
    18  6  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
    12  . 12  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
     6  6  6  6  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
    18  .  .  .  6  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
     9  3  .  .  3  1  .  .  .  .  .  .  .  .  .  .  1  .  .  .  .  .
     6  .  6  .  2  .  2  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
     3  3  3  3  1  1  1  1  .  .  .  .  .  .  .  .  1  1  .  .  .  .
    12  .  .  .  .  .  .  . 12  .  .  .  .  .  .  .  .  .  .  .  .  .
     6  2  .  .  .  .  .  .  6  2  .  .  .  .  .  .  .  .  .  .  .  .
     4  .  4  .  .  .  .  .  4  .  4  .  .  .  .  .  .  .  .  .  4  .
     2  2  2  2  .  .  .  .  2  2  2  2  .  .  .  .  .  .  .  .  2  .
     6  .  .  .  6  .  .  .  6  .  .  .  6  .  .  .  .  .  .  .  .  .
     3  1  .  .  3  1  .  .  3  1  .  .  3  1  .  .  1  .  1  .  .  .
     2  .  2  .  2  .  2  .  2  .  2  .  2  .  2  .  .  .  .  .  2  .
     1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1
    18  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  2  .  .  .  .  .
     6  .  6  .  .  .  .  .  .  .  .  .  .  .  .  .  2  2  .  .  .  .
     6  .  .  .  .  .  .  .  6  .  .  .  .  .  .  .  2  .  2  .  .  .
     2  .  2  .  .  .  .  .  2  .  2  .  .  .  .  .  2  2  2  2  2  2
    12  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  6  .
     6  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  2  .  .  .  3  1
"""

MPRIME = """
      6   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .
      3   1   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .
      2   .   2   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .
      1   1   1   1   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .
      3   .   .   .   3   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .
    3/2 1/2   .   . 3/2 1/2   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .
      1   .   1   .   1   .   1   .   .   .   .   .   .   .   .   .   .   .   .   .   .   .
    1/2 1/2 1/2 1/2 1/2 1/2 1/2 1/2   .   .   .   .   .   .   .   .   .   .   .   .   .   .
      2   .   .   .   .   .   .   .   4   .   .   .   .   .   .   .   .   .   .   .   .   .
      1 1/3   .   .   .   .   .   .   2 2/3   .   .   .   .   .   .   .   .   .   .   .   .
    2/3   . 2/3   .   .   .   .   . 4/3   . 4/3   .   .   .   .   .   .   .   .   .   .   .
    1/3 1/3 1/3 1/3   .   .   .   . 2/3 2/3 2/3 2/3   .   .   .   .   .   .   .   .   .   .
      1   .   .   .   3   .   .   .   2   .   .   .   6   .   .   .   .   .   .   .   .   .
    1/2 1/6   .   . 3/2 1/2   .   .   1 1/3   .   .   3   1   .   .   .   .   .   .   .   .
    1/3   . 1/3   .   1   .   1   . 2/3   . 2/3   .   2   .   2   .   .   .   .   .   .   .
    1/6 1/6 1/6 1/6 1/2 1/2 1/2 1/2 1/3 1/3 1/3 1/3   1   1   1   1   .   .   .   .   .   .
      3   .   .   .   .   1   .   .   .   .   .   .   .   .   .   .   1   .   .   .   .   .
      1   .   1   .   .   1   .   1   .   .   .   .   .   .   .   .   1   1   .   .   .   .
      1   .   .   .   .   1   .   .   2   .   .   .   .   2   .   .   1   .   2   .   .   .
    1/3   . 1/3   .   .   1   .   1 2/3   . 2/3   .   .   2   .   2   1   1   2   2   .   .
      2   .   .   .   .   .   .   .   .   .   2   .   .   .   .   .   .   .   .   .   2   .
      1   .   .   .   .   1   .   .   .   .   1   .   .   .   .   .   1   .   .   .   1   1
"""

# the P/K block for the trivial quotient type, rows L1..L16
PK_TRIVIAL = """
    1 . . . . . . . . . . . . . . .
    3 1 . . . . . . . . . . . . . .
    1 . 1 . . . . . . . . . . . . .
    1 1 1 1 . . . . . . . . . . . .
    3 . . . 1 . . . . . . . . . . .
    9 3 . . 3 1 . . . . . . . . . .
    3 . 3 . 1 . 1 . . . . . . . . .
    3 3 3 3 1 1 1 1 . . . . . . . .
    1 . . . . . . . 1 . . . . . . .
    3 1 . . . . . . 3 1 . . . . . .
    1 . 1 . . . . . 1 . 1 . . . . .
    1 1 1 1 . . . . 1 1 1 1 . . . .
    1 . . . 1 . . . 1 . . . 1 . . .
    3 1 . . 3 1 . . 3 1 . . 3 1 . .
    1 . 1 . 1 . 1 . 1 . 1 . 1 . 1 .
    1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1
"""

# Blocks of A(<=_K), one per pair of bottom groups (K1, K2).
BLOCKS_K = [
    ([1, 17, 21, 22], [[1], [9, 1], [2, 0, 1], [6, 2, 3, 1]]),
    ([2], [[1]]),
    ([3, 18], [[1], [3, 1]]),
    ([4], [[1]]),
    ([5], [[1]]),
    ([6], [[1]]),
    ([7], [[1]]),
    ([8], [[1]]),
    ([9, 19], [[1], [3, 1]]),
    ([10], [[1]]),
    ([11, 20], [[1], [1, 1]]),
    ([12], [[1]]),
    ([13], [[1]]),
    ([14], [[1]]),
    ([15], [[1]]),
    ([16], [[1]]),
]

# Blocks of A(<=_{P/K}), one per quotient type.
BLOCKS_PK = [
    (list(range(1, 17)), rows_of(PK_TRIVIAL)),
    ([17, 18, 19, 20], [[1], [1, 1], [1, 0, 1], [1, 1, 1, 1]]),
    ([21], [[1]]),
    ([22], [[1]]),
]

# Blocks of A(<=_P), one per pair of top groups (P1, P2).
BLOCKS_P = [
    ([1], [[1]]),
    ([2], [[1]]),
    ([3], [[1]]),
    ([4], [[1]]),
    ([5], [[1]]),
    ([17, 6], [[1], [1, 1]]),
    ([7], [[1]]),
    ([18, 8], [[1], [1, 1]]),
    ([9], [[1]]),
    ([10], [[1]]),
    ([21, 11], [[1], [1, 1]]),
    ([12], [[1]]),
    ([13], [[1]]),
    ([19, 14], [[1], [1, 1]]),
    ([15], [[1]]),
    ([22, 20, 16], [[1], [1, 1], [1, 1, 1]]),
]

# Goursat data of each class: (left section, right section).
CLASS_SECTIONS = {
    **{f"L{4 * a + b + 1}": (s1, s2)
       for a, s1 in enumerate(["(1,1)", "(2,2)", "(3,3)", "(G,G)"])
       for b, s2 in enumerate(["(1,1)", "(2,2)", "(3,3)", "(G,G)"])},
    "L17": ("(2,1)", "(2,1)"),
    "L18": ("(2,1)", "(G,3)"),
    "L19": ("(G,3)", "(2,1)"),
    "L20": ("(G,3)", "(G,3)"),
    "L21": ("(3,1)", "(3,1)"),
    "L22": ("(G,1)", "(G,1)"),
}

EQUIVALENCE = [
    [1, 5, 9, 13], [2, 6, 10, 14], [3, 7, 11, 15], [4, 8, 12, 16],
    [17, 19], [18, 20], [21], [22],
]

RADICAL = [4, 8, 12, 13, 14, 15, 16, 18, 19, 20]

# b20 and b22 in the c-basis, as {index: coefficient}
B20_IN_C = {1: "1/3", 3: "1/3", 6: 1, 8: 1, 9: "2/3", 11: "2/3", 14: 2, 16: 2, 17: 1, 18: 1, 19: 2, 20: 2}
B22_IN_C = {1: 1, 6: 1, 11: 1, 17: 1, 21: 1, 22: 1}

BETA_B20 = """
    1/3   .  1/3   .   .   .   .   .
      .   1    .   1   .   .   .   .
    2/3   .  2/3   .   .   .   .   .
      .   .    .   .   .   .   .   .
      .   .    .   .   1   1   .   .
      .   .    .   .   .   .   .   .
      .   .    .   .   .   .   .   .
      .   2    .   2   2   2   .   .
"""
