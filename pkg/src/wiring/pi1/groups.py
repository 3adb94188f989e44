"""Small finite groups as multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements are ``0..n-1`` with ``0`` the identity; ``table[x, y] = x * y``."""

    name: str
    table: np.ndarray
    inv: np.ndarray = field(init=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int16)
        n = t.shape[0]
        if t.shape != (n, n) or not (t[0] == np.arange(n)).all() or not (t[:, 0] == np.arange(n)).all():
            raise ValueError(f"{self.name}: table must be square with identity 0")
        inv = np.argmax(t == 0, axis=1).astype(np.int16)
        if not (t[np.arange(n), inv] == 0).all():
            raise ValueError(f"{self.name}: missing inverses")
        t.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "inv", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def is_associative(self) -> bool:
        t = self.table
        return bool((t[t] == t[:, t]).all())  # (xy)z == x(yz)

    def power(self, x: int, k: int) -> int:
        out = 0
        for _ in range(k):
            out = int(self.table[out, x])
        return out

    def conjugacy_classes(self) -> list[list[int]]:
        seen, classes = set(), []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({int(self.table[self.table[g, x], self.inv[g]]) for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def evaluate(self, word: Sequence[int], images: Sequence[int]) -> int:
        out = 0
        for x in word:
            g = images[x - 1] if x > 0 else int(self.inv[images[-x - 1]])
            out = int(self.table[out, g])
        return out


def group_from_permutations(name: str, gens: Sequence[Sequence[int]]) -> FiniteGroup:
    """Close 0-based permutation tuples under composition."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                h = tuple(g[e[k]] for k in range(n))  # apply e then g
                if h not in index:
                    index[h] = len(elems)
                    elems.append(h)
                    new.append(h)
        frontier = new
    m = len(elems)
    table = np.zeros((m, m), dtype=np.int16)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            table[i, j] = index[tuple(x[y[k]] for k in range(n))]
    return FiniteGroup(name, table)


def cyclic_group(n: int) -> FiniteGroup:
    r = np.arange(n)
    return FiniteGroup(f"C{n}", (r[:, None] + r[None, :]) % n)


def direct_product(name: str, g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    a, b = g.order, h.order
    x = np.arange(a * b)
    gi, hi = x // b, x % b
    table = g.table[gi[:, None], gi[None, :]].astype(np.int32) * b + h.table[hi[:, None], hi[None, :]]
    return FiniteGroup(name, table)


def _perm(cycles: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    img = list(range(n))
    for cyc in cycles:
        for k, x in enumerate(cyc):
            img[x - 1] = cyc[(k + 1) % len(cyc)] - 1
    return tuple(img)


@lru_cache(maxsize=None)
def default_targets() -> tuple[FiniteGroup, ...]:
    """Every group of order at most 8, up to isomorphism (fourteen of them)."""
    c2 = cyclic_group(2)
    out = [cyclic_group(n) for n in range(1, 9)]
    out.append(direct_product("C2xC2", c2, c2))
    out.append(direct_product("C4xC2", cyclic_group(4), c2))
    out.append(direct_product("C2xC2xC2", direct_product("C2xC2", c2, c2), c2))
    out.append(group_from_permutations("S3", [_perm([(1, 2)], 3), _perm([(1, 2, 3)], 3)]))
    out.append(group_from_permutations("D4", [_perm([(1, 2, 3, 4)], 4), _perm([(1, 3)], 4)]))
    out.append(group_from_permutations("Q8", [
        _perm([(1, 2, 3, 4), (5, 6, 7, 8)], 8),
        _perm([(1, 5, 3, 7), (2, 8, 4, 6)], 8),
    ]))
    return tuple(out)


def target_by_name(name: str) -> FiniteGroup:
    for g in default_targets():
        if g.name == name:
            return g
    raise KeyError(f"unknown target group {name!r}")
