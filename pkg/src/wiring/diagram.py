"""Wiring diagrams encoded as lists of Lefschetz pairs.

A diagram on ``ell`` wires is an ordered tuple of pairs ``(a, b)`` with
``1 <= a < b <= ell``.  Each pair is one intersection point: the wires in
local slots ``a..b`` meet there and their order is reversed.  Lines are
labelled by their slot at the start of the sweep, so line ``x`` starts in
slot ``x``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

Pair = tuple[int, int]


class DiagramError(ValueError):
    """Malformed diagram text or a pair that violates ``1 <= a < b <= ell``."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)
        self.position = position


class InvalidDiagram(ValueError):
    """Raised when an operation needs the unique intersection property."""


@dataclass(frozen=True)
class Diagram:
    ell: int
    pairs: tuple[Pair, ...] = ()

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if self.ell < 1:
            raise DiagramError(f"wire count must be positive, got {self.ell}")
        for n, (a, b) in enumerate(pairs, 1):
            if not a < b:
                raise DiagramError(f"pair {n} <{a},{b}> needs a < b")
            if a < 1 or b > self.ell:
                raise DiagramError(f"pair {n} <{a},{b}> exceeds the wire range 1..{self.ell}")

    @property
    def p(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    def __str__(self) -> str:
        return format_diagram(self)

    def with_pairs(self, pairs: Iterable[Pair]) -> "Diagram":
        return Diagram(self.ell, tuple(pairs))

    def encode(self) -> bytes:
        """One byte per pair, ``a`` in the high nibble; needs ``ell <= 15``."""
        if self.ell > 15:
            raise ValueError("packed encoding supports at most 15 wires")
        return bytes(a << 4 | b for a, b in self.pairs)

    @classmethod
    def decode(cls, ell: int, data: bytes) -> "Diagram":
        return cls(ell, tuple(DECODE[x] for x in data))


# byte -> pair lookup for the packed encoding
DECODE: tuple[Pair, ...] = tuple((x >> 4, x & 15) for x in range(256))


def encode_pairs(pairs: Sequence[Pair]) -> bytes:
    return bytes(a << 4 | b for a, b in pairs)


def decode_pairs(data: bytes) -> tuple[Pair, ...]:
    return tuple(DECODE[x] for x in data)


# ---------------------------------------------------------------- text format

_HEADER = re.compile(r"\s*l\s*=\s*(\d+)\s*:")
_PAIR = re.compile(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_diagram(text: str) -> Diagram:
    """Parse ``l=<ell>: (a1,b1)(a2,b2)...``."""
    m = _HEADER.match(text)
    if not m:
        raise DiagramError("expected 'l=<wires>:' header", 0)
    ell = int(m.group(1))
    pos = m.end()
    pairs = []
    while True:
        rest = text[pos:]
        if not rest.strip():
            break
        pm = _PAIR.match(text, pos)
        if not pm:
            col = pos + len(rest) - len(rest.lstrip())
            raise DiagramError("expected '(a,b)'", col)
        a, b = int(pm.group(1)), int(pm.group(2))
        start = pm.start() + len(pm.group(0)) - len(pm.group(0).lstrip())
        if a >= b:
            raise DiagramError(f"pair ({a},{b}) must satisfy a < b", start)
        if a < 1 or b > ell:
            raise DiagramError(f"pair ({a},{b}) exceeds the declared {ell} wires", start)
        pairs.append((a, b))
        pos = pm.end()
    if ell < 1:
        raise DiagramError("wire count must be positive", m.start(1))
    return Diagram(ell, tuple(pairs))


def format_diagram(d: Diagram) -> str:
    return f"l={d.ell}: " + "".join(f"({a},{b})" for a, b in d.pairs)


def read_diagrams(lines: Iterable[str]) -> list[Diagram]:
    """Parse one diagram per line, skipping blanks and ``#`` comments."""
    out = []
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        try:
            out.append(parse_diagram(line))
        except DiagramError as exc:
            raise DiagramError(f"line {n}: {exc}") from None
    return out


# ---------------------------------------------------------------- signature


@dataclass(frozen=True)
class Signature:
    """Multiplicity ``k`` -> number of points of that multiplicity."""

    counts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        items = self.counts.items() if isinstance(self.counts, dict) else self.counts
        merged: Counter = Counter()
        for k, n in items:
            if k < 2 or n < 0:
                raise ValueError(f"bad signature entry {k}^{n}")
            merged[k] += n
        object.__setattr__(self, "counts", tuple(sorted((k, n) for k, n in merged.items() if n)))

    @classmethod
    def parse(cls, text: str) -> "Signature":
        text = text.strip().strip("[]")
        counts = []
        for tok in text.replace(",", " ").split():
            k, _, n = tok.partition("^")
            try:
                counts.append((int(k), int(n) if n else 1))
            except ValueError:
                raise ValueError(f"bad signature token {tok!r}") from None
        return cls(tuple(counts))

    def __str__(self) -> str:
        return " ".join(f"{k}^{n}" for k, n in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def p(self) -> int:
        return sum(n for _, n in self.counts)

    @property
    def crossings(self) -> int:
        return sum(n * comb(k, 2) for k, n in self.counts)

    def lines(self) -> int:
        """Wire count forced by the crossing identity; ValueError if none fits."""
        total = self.crossings
        ell = 1
        while comb(ell, 2) < total:
            ell += 1
        if comb(ell, 2) != total:
            raise ValueError(f"signature [{self}] does not fit any wire count")
        return ell

    def multiplicities(self) -> list[int]:
        return [k for k, n in self.counts for _ in range(n)]


def multiplicity(pair: Pair) -> int:
    return pair[1] - pair[0] + 1


def signature_of(d: Diagram) -> Signature:
    return Signature(tuple(Counter(b - a + 1 for a, b in d.pairs).items()))


def check_suip(s: Signature, ell: int) -> bool:
    return s.crossings == comb(ell, 2)


# ---------------------------------------------------------------- permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..n}``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def reversal(cls, n: int) -> "Permutation":
        """The order-reversing map ``J(i) = n + 1 - i``."""
        return cls(tuple(range(n, 0, -1)))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def __len__(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))


def pair_permutation(pair: Pair, ell: int) -> Permutation:
    a, b = pair
    return Permutation(tuple(a + b - t if a <= t <= b else t for t in range(1, ell + 1)))


def reverse_window(slots: list[int], a: int, b: int) -> None:
    """Reverse ``slots[a-1:b]`` in place (slots are 1-based)."""
    slots[a - 1:b] = slots[a - 1:b][::-1]


def wire_order_after(d: Diagram, k: int) -> Permutation:
    """Map from line label to its slot after the first ``k`` points."""
    if not 0 <= k <= d.p:
        raise ValueError(f"prefix length {k} outside 0..{d.p}")
    slots = list(range(1, d.ell + 1))  # slots[s-1] = line in slot s
    for a, b in d.pairs[:k]:
        reverse_window(slots, a, b)
    return Permutation(tuple(slots)).inverse()


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class UIPResult:
    valid: bool
    message: str = ""
    point: int | None = None  # 1-based point index of the first offence
    lines: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate_uip(d: Diagram) -> UIPResult:
    """Sweep left to right checking that every two lines cross exactly once."""
    ell = d.ell
    slots = list(range(1, ell + 1))
    crossed = [[False] * (ell + 1) for _ in range(ell + 1)]
    for n, (a, b) in enumerate(d.pairs, 1):
        window = slots[a - 1:b]
        for i, x in enumerate(window):
            for y in window[i + 1:]:
                if crossed[x][y]:
                    lo, hi = min(x, y), max(x, y)
                    return UIPResult(False, f"lines {lo} and {hi} cross twice, again at point {n}", n, (lo, hi))
                crossed[x][y] = crossed[y][x] = True
        slots[a - 1:b] = window[::-1]
    for x in range(1, ell + 1):
        for y in range(x + 1, ell + 1):
            if not crossed[x][y]:
                return UIPResult(False, f"lines {x} and {y} never cross", None, (x, y))
    # both criteria must agree once every pair crossed exactly once
    if slots != list(range(ell, 0, -1)):
        raise AssertionError(f"sweep accepted {d} but the pair product is not the reversal")
    return UIPResult(True)


def is_valid(d: Diagram) -> bool:
    return validate_uip(d).valid


def require_valid(d: Diagram) -> Diagram:
    res = validate_uip(d)
    if not res:
        raise InvalidDiagram(f"{d}: {res.message}")
    return d


def product_is_reversal(d: Diagram) -> bool:
    """The algebraic criterion: composing the pair permutations gives ``J``."""
    slots = list(range(1, d.ell + 1))
    for a, b in d.pairs:
        reverse_window(slots, a, b)
    return slots == list(range(d.ell, 0, -1))


def crossing_points(d: Diagram) -> list[tuple[int, frozenset[int]]]:
    """``(point index, set of global lines meeting there)`` for a valid diagram."""
    require_valid(d)
    slots = list(range(1, d.ell + 1))
    out = []
    for n, (a, b) in enumerate(d.pairs, 1):
        out.append((n, frozenset(slots[a - 1:b])))
        reverse_window(slots, a, b)
    return out


def render_ascii(d: Diagram) -> str:
    """Draw the wires as rows; ``X`` marks the slots meeting at each point.

    The left column is the line in each slot at the start, the right column
    the line in that slot at the end.
    """
    require_valid(d)
    ell = d.ell
    width = len(str(ell))
    rows = [[] for _ in range(ell)]
    for a, b in d.pairs:
        for s in range(ell):
            rows[s].append("-X" if a - 1 <= s <= b - 1 else "--")
    final = list(range(ell, 0, -1))
    lines = []
    for s in range(ell):
        body = "".join(rows[s]) + "--"
        lines.append(f"{s + 1:>{width}} {body} {final[s]:>{width}}")
    return "\n".join(lines)


# ---------------------------------------------------------------- generation


def random_diagram(ell: int, rng, multi: float = 0.35) -> Diagram:
    """Random valid diagram: repeatedly cross an ascending run of adjacent wires.

    ``multi`` is the probability of extending a crossing by one more wire.
    """
    slots = list(range(1, ell + 1))
    pairs = []
    while True:
        ascents = [s for s in range(1, ell) if slots[s - 1] < slots[s]]
        if not ascents:
            break
        a = rng.choice(ascents)
        b = a + 1
        while b < ell and slots[b - 1] < slots[b] and rng.random() < multi:
            b += 1
        pairs.append((a, b))
        reverse_window(slots, a, b)
    return Diagram(ell, tuple(pairs))
