"""Commutation equivalence of diagrams as a trace monoid.

Two pairs commute when their integer intervals are disjoint.  The canonical
representative of a class is its lexicographically least member, which is
the Anisimov-Knuth lexicographic normal form of the trace.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .diagram import Diagram, Pair


class ClassTooLarge(RuntimeError):
    pass


def disjoint(p: Pair, q: Pair) -> bool:
    return p[1] < q[0] or q[1] < p[0]


def canonical_pairs(pairs: Iterable[Pair]) -> tuple[Pair, ...]:
    """Lexicographic normal form, built by inserting one letter at a time.

    Appending ``c`` to a normal form ``u``: let ``v`` be the longest suffix of
    ``u`` commuting with ``c``.  The new normal form puts ``c`` right after the
    run of letters of ``v`` that are smaller than ``c``.
    """
    out: list[Pair] = []
    for c in pairs:
        ca, cb = c
        j = len(out)
        while j:
            x = out[j - 1]
            if x[1] < ca or cb < x[0]:
                j -= 1
            else:
                break
        n = len(out)
        while j < n and out[j] < c:
            j += 1
        out.insert(j, c)
    return tuple(out)


def canonical_form(d: Diagram) -> Diagram:
    return Diagram(d.ell, canonical_pairs(d.pairs))


def is_canonical_pairs(pairs: Sequence[Pair]) -> bool:
    """No factor ``b u a`` with ``a < b`` and ``a`` commuting with all of ``b u``."""
    for i, c in enumerate(pairs):
        ca, cb = c
        for j in range(i - 1, -1, -1):
            x = pairs[j]
            if not (x[1] < ca or cb < x[0]):
                break
            if x > c:
                return False
    return True


def is_canonical(d: Diagram) -> bool:
    return is_canonical_pairs(d.pairs)


def equivalent(a: Diagram, b: Diagram) -> bool:
    return a.ell == b.ell and canonical_pairs(a.pairs) == canonical_pairs(b.pairs)


def dependence_edges(d: Diagram) -> list[tuple[int, int]]:
    """1-based position pairs ``i < j`` whose pairs do not commute."""
    ps = d.pairs
    return [
        (i + 1, j + 1)
        for i in range(len(ps))
        for j in range(i + 1, len(ps))
        if not disjoint(ps[i], ps[j])
    ]


def minimal_front_positions(d: Diagram) -> set[int]:
    """1-based positions whose pair commutes with every earlier pair."""
    ps = d.pairs
    out = set()
    for i, c in enumerate(ps):
        if all(disjoint(c, x) for x in ps[:i]):
            out.add(i + 1)
    return out


def maximal_back_positions(d: Diagram) -> set[int]:
    ps = d.pairs
    out = set()
    for i, c in enumerate(ps):
        if all(disjoint(c, x) for x in ps[i + 1:]):
            out.add(i + 1)
    return out


def _split_around(pairs: Sequence[Pair], sel: Sequence[int]):
    """Partition 0-based positions around a selected increasing block.

    Returns ``(before, after)`` index lists, or None if some outside piece is
    forced both after and before the block (the block is not convex).
    """
    first, last = sel[0], sel[-1]
    chosen = set(sel)
    forced_after = [False] * len(pairs)
    for z in range(first + 1, last + 1):
        pz = pairs[z]
        if z in chosen:
            # a selected piece may not follow something pushed behind the block
            for y in range(first + 1, z):
                if forced_after[y] and not disjoint(pairs[y], pz):
                    return None
            continue
        for y in range(first, z):
            if (y in chosen or forced_after[y]) and not disjoint(pairs[y], pz):
                forced_after[z] = True
                break
    before = [z for z in range(first)]
    before += [z for z in range(first + 1, last) if z not in chosen and not forced_after[z]]
    after = [z for z in range(first + 1, last) if forced_after[z]]
    after += list(range(last + 1, len(pairs)))
    return before, after


def can_extract_contiguous(d: Diagram, positions: Sequence[int]) -> bool:
    """Whether some ``d' == d`` has the given 1-based positions adjacent, in order."""
    sel = [p - 1 for p in positions]
    if any(b <= a for a, b in zip(sel, sel[1:])):
        raise ValueError("positions must be strictly increasing")
    if not sel:
        return True
    return _split_around(d.pairs, sel) is not None


def extract_contiguous(d: Diagram, positions: Sequence[int]) -> tuple[tuple[Pair, ...], tuple[Pair, ...], tuple[Pair, ...]] | None:
    """``(before, block, after)`` with ``before + block + after == d``, or None."""
    sel = [p - 1 for p in positions]
    split = _split_around(d.pairs, sel)
    if split is None:
        return None
    before, after = split
    ps = d.pairs
    return (tuple(ps[z] for z in before), tuple(ps[z] for z in sel), tuple(ps[z] for z in after))


# ---------------------------------------------------------------- test oracle


def enumerate_class(d: Diagram, node_cap: int = 10**6) -> set[tuple[Pair, ...]]:
    """Every member of the class of ``d``, by breadth-first adjacent swaps."""
    start = tuple(d.pairs)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            if disjoint(w[i], w[i + 1]):
                v = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if v not in seen:
                    seen.add(v)
                    if len(seen) > node_cap:
                        raise ClassTooLarge(f"class of {d} exceeds {node_cap} members")
                    queue.append(v)
    return seen
