"""Counting homomorphisms from a finitely presented group into a finite group."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .abelian import abelianization_of
from .groups import FiniteGroup, default_targets
from .presentation import Presentation


class HomSearchBudget(RuntimeError):
    """The search visited more partial assignments than allowed."""


def _generator_order(ngens: int, relators: Sequence[Sequence[int]]) -> list[int]:
    """Greedy order that completes relators as early as possible."""
    supports = [set(abs(x) for x in r) for r in relators]
    order: list[int] = []
    left = set(range(1, ngens + 1))
    while left:
        chosen = set(order)

        def score(g):
            done = sum(1 for s in supports if g in s and s <= chosen | {g})
            touch = sum(1 for s in supports if g in s)
            return (-done, -touch, g)

        g = min(left, key=score)
        order.append(g)
        left.remove(g)
    return order


def _count_by_search(ngens: int, relators: Sequence[Sequence[int]], group: FiniteGroup, node_cap: int) -> int:
    n = group.order
    table = group.table
    inv = group.inv
    order = _generator_order(ngens, relators)
    slot = {g: k for k, g in enumerate(order)}
    # relators grouped by the level at which their last generator gets assigned
    checks: list[list[list[tuple[int, bool]]]] = [[] for _ in order]
    for r in relators:
        if not r:
            continue
        letters = [(slot[abs(x)], x < 0) for x in r]
        checks[max(k for k, _ in letters)].append(letters)

    classes = group.conjugacy_classes()
    weights = np.array([len(c) for c in classes], dtype=np.int64)
    rows = np.array([[c[0]] for c in classes], dtype=np.int16)
    nodes = len(rows)

    def keep(rows, level):
        mask = np.ones(len(rows), dtype=bool)
        for letters in checks[level]:
            cur = np.zeros(len(rows), dtype=np.int16)
            for k, neg in letters:
                g = rows[:, k]
                cur = table[cur, inv[g] if neg else g]
            mask &= cur == 0
        return mask

    m = keep(rows, 0)
    rows, weights = rows[m], weights[m]
    for level in range(1, ngens):
        nodes += len(rows) * n
        if nodes > node_cap:
            raise HomSearchBudget(f"homomorphism search into {group.name} exceeded {node_cap} nodes")
        rows = np.concatenate([np.repeat(rows, n, axis=0), np.tile(np.arange(n, dtype=np.int16), len(rows))[:, None]], axis=1)
        weights = np.repeat(weights, n)
        m = keep(rows, level)
        rows, weights = rows[m], weights[m]
    return int(weights.sum())


def _count_abelian(ngens: int, relators: Sequence[Sequence[int]], group: FiniteGroup) -> int:
    rank, torsion = abelianization_of(ngens, relators)
    count = group.order ** rank
    for d in torsion:
        count *= sum(1 for x in range(group.order) if group.power(x, d) == 0)
    return count


def hom_count(pres: Presentation, group: FiniteGroup, method: str = "auto", node_cap: int = 50_000_000) -> int:
    """Number of homomorphisms, i.e. generator images satisfying every relator.

    ``method="auto"`` goes through the abelianization when the target is
    abelian; ``"search"`` always runs the level-by-level search, which fixes the
    first generator to one element per conjugacy class and weights by class size.
    """
    if method not in ("auto", "search"):
        raise ValueError(f"unknown method {method!r}")
    if pres.ngens == 0:
        return 1
    if method == "auto" and group.is_abelian():
        return _count_abelian(pres.ngens, pres.relators, group)
    return _count_by_search(pres.ngens, pres.relators, group, node_cap)


def hom_count_bruteforce(pres: Presentation, group: FiniteGroup) -> int:
    from itertools import product

    return sum(
        1
        for imgs in product(range(group.order), repeat=pres.ngens)
        if all(group.evaluate(r, imgs) == 0 for r in pres.relators)
    )


@dataclass(frozen=True)
class GroupFingerprint:
    rank: int
    torsion: tuple[int, ...]
    hom_counts: tuple[tuple[str, int], ...]

    @property
    def abelianization(self) -> tuple[int, tuple[int, ...]]:
        return self.rank, self.torsion

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion), "hom_counts": dict(self.hom_counts)}

    def __str__(self) -> str:
        ab = f"Z^{self.rank}" + "".join(f" + Z/{d}" for d in self.torsion)
        homs = " ".join(f"{k}:{v}" for k, v in self.hom_counts)
        return f"{ab} | {homs}"


def fingerprint(pres: Presentation, targets: Iterable[FiniteGroup] | None = None, node_cap: int = 50_000_000) -> GroupFingerprint:
    targets = default_targets() if targets is None else tuple(targets)
    rank, torsion = abelianization_of(pres.ngens, pres.relators)
    counts = tuple((g.name, hom_count(pres, g, node_cap=node_cap)) for g in targets)
    return GroupFingerprint(rank, torsion, counts)
