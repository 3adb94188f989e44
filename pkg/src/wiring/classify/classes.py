"""Union of commutation classes under sigma, tau, mu and delta."""
from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..actions import delta_neighbors, mu, sigma, sigma_class_neighbors, tau
from ..diagram import Diagram, Signature, signature_of
from ..lattice import canonical_lattice, format_lattice, lattice_of
from ..trace import canonical_form
from .store import ClassStore

log = logging.getLogger(__name__)

MOVE_NAMES = ("sigma", "tau", "mu", "delta")

# Counts reported for [2^13 3^3 4^1] on 8 wires, keyed by the sigma/tau/mu/delta flags.
PUBLISHED_8_LINE = {
    "----": 354880, "---+": 114379, "--+-": 22180, "--++": 6104,
    "-+--": 177440, "-+-+": 54539, "-++-": 11090, "-+++": 3076,
    "+---": 5060, "+--+": 772, "+-+-": 116, "+-++": 22,
    "++--": 2558, "++-+": 398, "+++-": 116, "++++": 22,
}
PUBLISHED_8_LINE_SIGNATURE = Signature.parse("2^13 3^3 4^1")


@dataclass(frozen=True)
class MoveSet:
    sigma: bool = False
    tau: bool = False
    mu: bool = False
    delta: bool = False

    @classmethod
    def parse(cls, text: str) -> "MoveSet":
        """Comma separated move names, ``all`` or ``none``."""
        text = text.strip().lower()
        if text in ("", "none"):
            return cls()
        if text == "all":
            return cls(True, True, True, True)
        names = {t.strip() for t in text.split(",") if t.strip()}
        bad = names - set(MOVE_NAMES)
        if bad:
            raise ValueError(f"unknown move(s): {', '.join(sorted(bad))}")
        return cls(**{n: True for n in names})

    @classmethod
    def all_subsets(cls) -> list["MoveSet"]:
        return [cls(*flags) for flags in product((False, True), repeat=4)]

    @property
    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.sigma, self.tau, self.mu, self.delta)

    def enabled(self) -> list[str]:
        return [n for n, f in zip(MOVE_NAMES, self.flags) if f]

    @property
    def label(self) -> str:
        return "".join("+" if f else "-" for f in self.flags)

    def __str__(self) -> str:
        return ",".join(self.enabled()) or "none"


@dataclass(frozen=True)
class DeltaVariant:
    policy: str = "equiv"
    ends: bool = True

    def __str__(self) -> str:
        return f"{self.policy}{'' if self.ends else '-interior'}"


ALL_DELTA_VARIANTS = (
    DeltaVariant("equiv", True),
    DeltaVariant("literal", True),
    DeltaVariant("equiv", False),
    DeltaVariant("literal", False),
)


class MoveGraph:
    """Edges between class indices, computed once per move and cached."""

    def __init__(self, store: ClassStore):
        self.store = store
        self._edges: dict[str, tuple[np.ndarray, np.ndarray]] = {}

    def _build(self, neighbours: Callable[[Diagram], Iterable[Diagram]]) -> tuple[np.ndarray, np.ndarray]:
        src, dst = [], []
        index_of = self.store.index_of
        for k, d in enumerate(self.store.diagrams()):
            for e in neighbours(d):
                try:
                    j = index_of(e.encode())
                except KeyError:
                    raise RuntimeError(f"move image {e} of class {k} is not a stored canonical class") from None
                if j != k:
                    src.append(k)
                    dst.append(j)
        return np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64)

    def edges(self, move: str, delta: DeltaVariant = DeltaVariant()) -> tuple[np.ndarray, np.ndarray]:
        key = move if move != "delta" else f"delta/{delta.policy}/{delta.ends}"
        if key not in self._edges:
            t = time.time()
            if move == "tau":
                fn = lambda d: (canonical_form(tau(d)),)
            elif move == "mu":
                fn = lambda d: (mu(d),)
            elif move == "sigma":
                fn = sigma_class_neighbors
            elif move == "delta":
                fn = lambda d: delta_neighbors(d, delta.policy, delta.ends)
            else:
                raise ValueError(f"unknown move {move!r}")
            self._edges[key] = self._build(fn)
            log.info("%s: %d edges in %.1fs", key, len(self._edges[key][0]), time.time() - t)
        return self._edges[key]


@dataclass
class Classification:
    moves: MoveSet
    count: int
    labels: np.ndarray  # component id per stored class
    delta: DeltaVariant | None = None
    representatives: list[int] = field(default_factory=list)  # least class index per component

    def members(self, component: int) -> np.ndarray:
        return np.flatnonzero(self.labels == component)


def _components(n: int, edges: Sequence[tuple[np.ndarray, np.ndarray]]) -> tuple[int, np.ndarray]:
    if edges:
        src = np.concatenate([e[0] for e in edges])
        dst = np.concatenate([e[1] for e in edges])
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n)).tocsr()
    return connected_components(graph, directed=True, connection="weak")


def classify(
    store: ClassStore,
    moves: MoveSet,
    delta: DeltaVariant = DeltaVariant(),
    graph: MoveGraph | None = None,
) -> Classification:
    """Connected components of the classes under the enabled moves."""
    graph = graph or MoveGraph(store)
    edges = [graph.edges(m, delta) for m in moves.enabled()]
    count, labels = _components(len(store), edges)
    # relabel components by their least member so the output is order independent
    first = np.full(count, len(store), dtype=np.int64)
    np.minimum.at(first, labels, np.arange(len(store)))
    order = np.argsort(first)
    rank = np.empty(count, dtype=np.int64)
    rank[order] = np.arange(count)
    return Classification(moves, int(count), rank[labels], delta if moves.delta else None, [int(x) for x in first[order]])


@dataclass
class TableReport:
    ell: int
    signature: Signature
    classes: int
    counts: dict[str, dict[str, int]]  # delta variant -> move label -> count
    seconds: float
    matching: list[str] = field(default_factory=list)

    def rows(self, variant: str) -> list[tuple[str, int]]:
        return [(m.label, self.counts[variant][m.label]) for m in MoveSet.all_subsets()]


def table(store: ClassStore, variants: Sequence[DeltaVariant] = ALL_DELTA_VARIANTS,
          graph: MoveGraph | None = None, reference: dict[str, int] | None = None) -> TableReport:
    """Counts for all sixteen move subsets, once per delta variant."""
    t = time.time()
    graph = graph or MoveGraph(store)
    if reference is None and store.ell == 8 and store.signature == PUBLISHED_8_LINE_SIGNATURE:
        reference = PUBLISHED_8_LINE
    counts = {}
    for v in variants:
        counts[str(v)] = {m.label: classify(store, m, v, graph).count for m in MoveSet.all_subsets()}
    matching = [name for name, c in counts.items() if reference is not None and c == reference]
    return TableReport(store.ell, store.signature, len(store), counts, time.time() - t, matching)


@dataclass
class LatticeBucket:
    lattice: str
    classes: list[int]  # representative store index per component
    affine: list
    projective: list

    @property
    def fingerprints_agree(self) -> bool:
        return len(set(self.affine)) <= 1 and len(set(self.projective)) <= 1


def lattice_report(store: ClassStore, result: Classification, targets=None) -> list[LatticeBucket]:
    """Group the components of ``result`` by canonical lattice and fingerprint each."""
    from ..pi1.homs import fingerprint
    from ..pi1.presentation import affine_presentation, projective_presentation

    buckets: dict[str, LatticeBucket] = {}
    for rep in result.representatives:
        d = store.diagram(rep)
        key = format_lattice(canonical_lattice(lattice_of(d)))
        b = buckets.setdefault(key, LatticeBucket(key, [], [], []))
        b.classes.append(rep)
        b.affine.append(fingerprint(affine_presentation(d), targets))
        b.projective.append(fingerprint(projective_presentation(d), targets))
    return sorted(buckets.values(), key=lambda b: b.lattice)


def orbit(d: Diagram, generators: Iterable[str]) -> list[Diagram]:
    """Closure of ``d`` under raw sigma and tau, in discovery order."""
    fns = []
    for g in generators:
        if g == "sigma":
            fns.append(sigma)
        elif g == "tau":
            fns.append(tau)
        else:
            raise ValueError(f"orbit generators are sigma and tau, got {g!r}")
    seen = {d}
    out = [d]
    queue = deque([d])
    while queue:
        x = queue.popleft()
        for f in fns:
            y = f(x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def signature_and_lines(d: Diagram) -> tuple[Signature, int]:
    return signature_of(d), d.ell
