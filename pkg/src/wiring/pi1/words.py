"""Free-group words as tuples of signed generator indices (``-3`` is the inverse of the third generator)."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

Word = tuple[int, ...]


def reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def mul(*words: Sequence[int]) -> Word:
    return reduce(x for w in words for x in w)


def conjugate(w: Sequence[int], by: Sequence[int]) -> Word:
    """``by * w * by^-1``."""
    return mul(by, w, inverse(by))


def commutator(a: Sequence[int], b: Sequence[int]) -> Word:
    return mul(a, b, inverse(a), inverse(b))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = reduce(word)
    i, j = 0, len(w)
    while j - i > 1 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def word_key(word: Sequence[int]) -> tuple:
    """Order letters ``1 < -1 < 2 < -2 < ...`` and compare lexicographically."""
    return tuple(2 * abs(x) + (x < 0) for x in word)


def cyclic_normal(word: Sequence[int]) -> Word:
    """Least rotation of the cyclic reduction of the word or of its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    cands = []
    for v in (w, inverse(w)):
        cands.extend(v[k:] + v[:k] for k in range(len(v)))
    return min(cands, key=word_key)


def abelianize(word: Iterable[int], ngens: int) -> list[int]:
    row = [0] * ngens
    for x in word:
        row[abs(x) - 1] += 1 if x > 0 else -1
    return row


def boundary_word(ell: int) -> Word:
    """``G_ell ... G_2 G_1``."""
    return tuple(range(ell, 0, -1))


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(x) for x in word)


# ---------------------------------------------------------------- partially commutative reduction
#
# Relators are compared modulo commutation relations established elsewhere,
# i.e. in the right-angled Artin group where generators g, h commute exactly
# when {g, h} is in the commuting set.


def _commute(x: int, y: int, commuting) -> bool:
    gx, gy = abs(x), abs(y)
    return gx != gy and frozenset((gx, gy)) in commuting


def raag_reduce(word: Iterable[int], commuting) -> Word:
    """Cancel ``x ... x^-1`` whenever everything in between commutes with ``x``."""
    out: list[int] = []
    for y in word:
        j = len(out) - 1
        while j >= 0:
            z = out[j]
            if z == -y:
                del out[j]
                break
            if not _commute(z, y, commuting):
                out.append(y)
                break
            j -= 1
        else:
            out.append(y)
    return tuple(out)


def raag_cyclic_reduce(word: Sequence[int], commuting) -> Word:
    w = list(raag_reduce(word, commuting))
    changed = True
    while changed and w:
        changed = False
        front = [i for i in range(len(w)) if all(_commute(w[k], w[i], commuting) for k in range(i))]
        back = [j for j in range(len(w)) if all(_commute(w[k], w[j], commuting) for k in range(j + 1, len(w)))]
        for i in front:
            for j in back:
                if i != j and w[j] == -w[i]:
                    w = [x for k, x in enumerate(w) if k not in (i, j)]
                    w = list(raag_reduce(w, commuting))
                    changed = True
                    break
            if changed:
                break
    return tuple(w)


def raag_cyclic_normal(word: Sequence[int], commuting, cap: int = 200000) -> Word:
    """Least word among rotations and commutations of the word or its inverse."""
    w = raag_cyclic_reduce(word, commuting)
    if not w:
        return ()
    best = None
    for start in (w, inverse(w)):
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if best is None or word_key(v) < word_key(best):
                best = v
            nbrs = [v[1:] + v[:1]]
            nbrs += [v[:k] + (v[k + 1], v[k]) + v[k + 2:] for k in range(len(v) - 1) if _commute(v[k], v[k + 1], commuting)]
            for u in nbrs:
                if u not in seen:
                    seen.add(u)
                    if len(seen) > cap:
                        raise RuntimeError("cyclic normal form search too large")
                    queue.append(u)
    return best


def generator_commutator(word: Sequence[int]) -> frozenset[int] | None:
    """The pair ``{g, h}`` if ``word`` is a commutator of two distinct generators up to inversion and rotation."""
    if len(word) != 4:
        return None
    a, b, c, d = word
    if c == -a and d == -b and abs(a) != abs(b):
        return frozenset((abs(a), abs(b)))
    return None


def commutation_closure(relators: Iterable[Sequence[int]]) -> tuple[frozenset, frozenset]:
    """Split relators into generator commutations and what remains modulo them.

    Repeatedly reduces every relator modulo the commutations found so far; any
    relator that becomes a commutator of two generators joins the set.  Returns
    ``(commuting pairs, normalized residual relators)``.
    """
    rels = [tuple(r) for r in relators]
    commuting: set[frozenset[int]] = set()
    changed = True
    while changed:
        changed = False
        for r in rels:
            red = raag_cyclic_reduce(r, commuting)
            pair = generator_commutator(red)
            if pair is not None and pair not in commuting:
                commuting.add(pair)
                changed = True
    frozen = frozenset(commuting)
    residual = set()
    for r in rels:
        n = raag_cyclic_normal(r, frozen)
        if n:
            residual.add(n)
    return frozen, frozenset(residual)


def _as_shift_equation(word: Word) -> tuple[Word, int, int] | None:
    """Read ``word`` as ``P Q^-1`` with ``P``, ``Q`` positive rotations of one cyclic word.

    Returns ``(least rotation, offset of P, offset of Q)``; offsets count how
    far each word is rotated from the least rotation.
    """
    n2 = len(word)
    if n2 % 2 or not n2:
        return None
    n = n2 // 2
    for v in (word, inverse(word)):
        for k in range(n2):
            u = v[k:] + v[:k]
            if all(x > 0 for x in u[:n]) and all(x < 0 for x in u[n:]):
                p, q = u[:n], inverse(u[n:])
                rots = [p[j:] + p[:j] for j in range(n)]
                if q not in rots:
                    continue
                least = min(rots)
                base = rots.index(least)
                return least, (-base) % n, (rots.index(q) - base) % n
    return None


def relation_normal_form(relators: Iterable[Sequence[int]]) -> tuple[frozenset, frozenset, frozenset]:
    """Normalize a relator set that is mostly commutations and shift equations.

    Commutations of generators are collected first and used to reduce the rest.
    Every remaining relator saying that two rotations of a positive word are
    equal becomes an edge between rotations; only the resulting partition of
    the rotations is kept, so ``t-1`` of the ``t`` consecutive equalities give
    the same answer whichever one is missing.  Returns ``(commuting pairs,
    {(cyclic word, partition)}, other residual relators)``.
    """
    commuting, residual = commutation_closure(relators)
    edges: dict[Word, list[tuple[int, int]]] = {}
    other = set()
    for r in residual:
        eq = _as_shift_equation(r)
        if eq is None:
            other.add(r)
        else:
            edges.setdefault(eq[0], []).append(eq[1:])
    shifts = set()
    for cyc, es in edges.items():
        parent = list(range(len(cyc)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in es:
            parent[find(a)] = find(b)
        blocks: dict[int, set[int]] = {}
        for x in range(len(cyc)):
            blocks.setdefault(find(x), set()).add(x)
        shifts.add((cyc, frozenset(frozenset(b) for b in blocks.values() if len(b) > 1)))
    return commuting, frozenset(shifts), frozenset(other)
