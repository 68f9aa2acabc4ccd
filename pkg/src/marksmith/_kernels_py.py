"""Pure-Python versions of the hot loops.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Tables are whatever :func:`prepare_table` returns; subgroups are ``int``
bitmasks over the element indices of the ambient group.
"""

NAME = "python"


def prepare_table(array):
    """Convert a 2-D numpy index table into the representation used here."""
    return array.tolist()


def prepare_vector(array):
    return list(array)


def closure(table, gens, identity):
    """Bitmask of the subgroup generated by ``gens``."""
    seen = 1 << identity
    queue = [identity]
    gens = list(gens)
    for x in queue:
        row = table[x]
        for g in gens:
            y = row[g]
            bit = 1 << y
            if not seen & bit:
                seen |= bit
                queue.append(y)
    return seen


def conjugate(conj, elements, g):
    """Bitmask of ``{g^-1 h g : h in elements}`` given ``conj[g][h] = g^-1 h g``."""
    row = conj[g]
    mask = 0
    for h in elements:
        mask |= 1 << row[h]
    return mask


def conjugators(conj, gens, target, candidates):
    """Bitmask of the ``g`` in ``candidates`` with ``g^-1 k g`` in ``target`` for all ``k`` in ``gens``."""
    mask = 0
    for g in candidates:
        row = conj[g]
        for k in gens:
            if not target >> row[k] & 1:
                break
        else:
            mask |= 1 << g
    return mask


def count_fixed_cosets(conj, inverse, reps, gens, target):
    """Number of right cosets ``H g`` (``g`` in ``reps``) fixed by every ``k`` in ``gens``.

    ``H g k = H g`` iff ``g k g^-1`` lies in ``H``; with the ``conj`` convention
    that is ``conj[g^-1][k]``.
    """
    count = 0
    for g in reps:
        row = conj[inverse[g]]
        for k in gens:
            if not target >> row[k] & 1:
                break
        else:
            count += 1
    return count
