"""Incidence lattices and their canonical labeling.

Only the rank-2 layer is stored: the multiset of intersection points, each
as the set of lines through it.  The lines, the whole plane and the empty
set are implicit, and the layer determines the rest of the lattice.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations

from .diagram import Diagram, crossing_points

Encoding = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IncidenceLattice:
    ell: int
    points: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(frozenset(pt) for pt in self.points))

    def check(self) -> None:
        seen = Counter()
        for pt in self.points:
            if len(pt) < 2 or not pt <= set(range(1, self.ell + 1)):
                raise ValueError(f"bad point {sorted(pt)}")
            for x, y in combinations(sorted(pt), 2):
                seen[x, y] += 1
        for x, y in combinations(range(1, self.ell + 1), 2):
            if seen[x, y] != 1:
                raise ValueError(f"lines {x},{y} meet {seen[x, y]} times")

    def encoding(self) -> Encoding:
        return tuple(sorted(tuple(sorted(pt)) for pt in self.points))

    def relabel(self, mapping) -> "IncidenceLattice":
        """``mapping[x]`` is the new label of line ``x`` (dict or callable)."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return IncidenceLattice(self.ell, tuple(frozenset(f(x) for x in pt) for pt in self.points))

    def multiplicities(self) -> Counter:
        return Counter(len(pt) for pt in self.points)


def lattice_of(d: Diagram) -> IncidenceLattice:
    return IncidenceLattice(d.ell, tuple(pt for _, pt in crossing_points(d)))


def format_lattice(enc: Encoding) -> str:
    return "".join("{" + ",".join(map(str, pt)) + "}" for pt in enc)


class _Search:
    def __init__(self, lat: IncidenceLattice, node_cap: int):
        self.ell = lat.ell
        self.points = [tuple(sorted(pt)) for pt in lat.points]
        self.pset = frozenset(lat.points)
        self.on_line = {x: [i for i, pt in enumerate(self.points) if x in pt] for x in range(1, self.ell + 1)}
        self.best: list[tuple[int, ...]] | None = None
        self.nodes = 0
        self.node_cap = node_cap

    def _twins(self, x: int, y: int) -> bool:
        """Swapping unassigned lines x and y is an automorphism."""
        for i in self.on_line[x]:
            pt = self.points[i]
            if y in pt:
                continue
            img = frozenset(y if z == x else z for z in pt)
            if img not in self.pset:
                return False
        return True

    def _bound(self, label: dict[int, int]) -> list[tuple[int, ...]]:
        """Sorted encoding with every unknown label replaced by the least unused ones.

        Any completion of ``label`` is entrywise at least this tuple by tuple,
        hence at least this list lexicographically; at a leaf it is exact.
        """
        m = len(label)
        out = []
        for pt in self.points:
            known = sorted(label[z] for z in pt if z in label)
            out.append(tuple(known) + tuple(range(m + 1, m + 1 + len(pt) - len(known))))
        out.sort()
        return out

    def run(self, order: list[int], label: dict[int, int], bound: list | None = None) -> None:
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise RuntimeError(f"lattice canonization exceeded {self.node_cap} nodes")
        if bound is None:
            bound = self._bound(label)
        if len(order) == self.ell:
            if self.best is None or bound < self.best:
                self.best = bound
            return
        free = [x for x in range(1, self.ell + 1) if x not in label]
        reps: list[int] = []
        for x in free:
            if any(self._twins(r, x) for r in reps):
                continue
            reps.append(x)
        children = []
        for x in reps:
            label[x] = len(order) + 1
            children.append((self._bound(label), x))
            del label[x]
        children.sort()
        for b, x in children:
            if self.best is not None and b >= self.best:
                break
            label[x] = len(order) + 1
            order.append(x)
            self.run(order, label, b)
            order.pop()
            del label[x]


def canonical_lattice(lat: IncidenceLattice, node_cap: int = 10**6) -> Encoding:
    """Least sorted point list over all relabelings of the lines.

    Depth-first over the assignment of new labels 1, 2, ...  A partial labeling
    is dropped when its lower bound is no better than the best complete one,
    and among candidate lines for the next label only one per class of
    interchangeable lines is tried.
    """
    s = _Search(lat, node_cap)
    s.run([], {})
    return tuple(s.best)


def canonical_lattice_bruteforce(lat: IncidenceLattice) -> Encoding:
    best = None
    for perm in permutations(range(1, lat.ell + 1)):
        enc = tuple(sorted(tuple(sorted(perm[x - 1] for x in pt)) for pt in lat.points))
        if best is None or enc < best:
            best = enc
    return best


def lattices_isomorphic(a: IncidenceLattice, b: IncidenceLattice) -> bool:
    if a.ell != b.ell or a.multiplicities() != b.multiplicities():
        return False
    return canonical_lattice(a) == canonical_lattice(b)
