"""Named small groups and the group-string parser used by the CLI."""

from __future__ import annotations

import re

from marksmith.groups import FiniteGroup, GroupError, Perm


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    if n == 1:
        return FiniteGroup([], degree=1, name="C1")
    return FiniteGroup([Perm(tuple((i + 1) % n for i in range(n)))], name=f"C{n}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order (``D8`` is the symmetry group of a square)."""
    if order < 4 or order % 2:
        raise GroupError("dihedral group order must be even and >= 4")
    n = order // 2
    if n == 2:
        return klein4(name="D4")
    rot = Perm(tuple((i + 1) % n for i in range(n)))
    ref = Perm(tuple((-i) % n for i in range(n)))
    return FiniteGroup([rot, ref], name=f"D{order}")


def klein4(name: str = "V4") -> FiniteGroup:
    return FiniteGroup([Perm.from_cycles("(1,2)", 4), Perm.from_cycles("(3,4)", 4)], name=name)


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    if n == 1:
        return FiniteGroup([], degree=1, name="S1")
    if n == 2:
        return FiniteGroup([Perm((1, 0))], name="S2")
    return FiniteGroup(
        [Perm.from_cycles("(1,2)", n), Perm.from_cycles("(" + ",".join(map(str, range(1, n + 1))) + ")", n)],
        name=f"S{n}",
    )


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup([], degree=max(n, 1), name=f"A{n}")
    gens = [Perm.from_cycles(f"(1,2,{k})", n) for k in range(3, n + 1)]
    return FiniteGroup(gens, name=f"A{n}")


# Preferred names for identification, tried in this order.
NAMED_TYPES: list[tuple[str, int]] = [
    ("C1", 1), ("C2", 2), ("C3", 3), ("C4", 4), ("V4", 4), ("C5", 5), ("C6", 6), ("S3", 6),
    ("C7", 7), ("C8", 8), ("D8", 8), ("Q8", 8), ("C9", 9), ("C10", 10), ("D10", 10),
    ("C11", 11), ("C12", 12), ("D12", 12), ("A4", 12), ("S4", 24), ("A5", 60),
]


def quaternion8() -> FiniteGroup:
    i = Perm.from_cycles("(1,2,3,4)(5,6,7,8)", 8)
    j = Perm.from_cycles("(1,5,3,7)(2,8,4,6)", 8)
    return FiniteGroup([i, j], name="Q8")


def by_name(name: str) -> FiniteGroup:
    """Build a catalogue group: ``Cn``, ``D2n``, ``V4``, ``Q8``, ``Sn``, ``An``."""
    m = re.fullmatch(r"([CDSA])(\d+)", name)
    if name == "V4":
        return klein4()
    if name == "Q8":
        return quaternion8()
    if not m:
        raise GroupError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        return cyclic(n)
    if kind == "D":
        return dihedral(n)
    if kind == "S":
        return symmetric(n)
    return alternating(n)


def parse_group(text: str) -> FiniteGroup:
    """Parse a catalogue name or ``perm:<degree>:<cycles>;<cycles>;...``."""
    text = text.strip()
    if text.startswith("perm:"):
        parts = text.split(":", 2)
        if len(parts) != 3 or not parts[1].isdigit():
            raise GroupError(f"malformed explicit group {text!r}")
        degree = int(parts[1])
        gens = [Perm.from_cycles(c, degree) for c in parts[2].split(";") if c.strip()]
        return FiniteGroup(gens, degree=degree, name=text)
    return by_name(text)
