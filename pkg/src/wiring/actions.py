"""Reflection, rotation, the move through infinity, and the triangle relation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import Diagram, Pair
from .trace import canonical_pairs, disjoint, extract_contiguous, minimal_front_positions


def tau(d: Diagram) -> Diagram:
    return Diagram(d.ell, d.pairs[::-1])


# ---------------------------------------------------------------- mu


@dataclass(frozen=True)
class MuDecomposition:
    """Points above, on and below the first line, with 1-based positions."""

    l_plus: tuple[tuple[int, Pair], ...]
    l_zero: tuple[tuple[int, Pair], ...]
    l_minus: tuple[tuple[int, Pair], ...]

    def concatenation(self) -> tuple[Pair, ...]:
        return tuple(q for _, q in self.l_plus + self.l_zero + self.l_minus)


def mu_decompose(d: Diagram) -> MuDecomposition:
    x = 1  # slot currently carrying line 1
    plus, zero, minus = [], [], []
    for n, (a, b) in enumerate(d.pairs, 1):
        if a <= x <= b:
            if x != a:
                raise ValueError(f"{d}: line 1 meets point {n} away from its top slot")
            zero.append((n, (a, b)))
            x = a + b - x
        elif x > b:
            minus.append((n, (a, b)))
        else:
            plus.append((n, (a, b)))
    return MuDecomposition(tuple(plus), tuple(zero), tuple(minus))


def mu_raw(d: Diagram) -> Diagram:
    """Shift ``L+`` up, reverse ``L0``, shift ``L-`` down; not canonicalized."""
    dec = mu_decompose(d)
    pairs = [(a - 1, b - 1) for _, (a, b) in dec.l_plus]
    pairs += [q for _, q in reversed(dec.l_zero)]
    pairs += [(a + 1, b + 1) for _, (a, b) in dec.l_minus]
    return Diagram(d.ell, tuple(pairs))


def mu(d: Diagram) -> Diagram:
    """The rotation on commutation classes; the result is canonical."""
    return Diagram(d.ell, canonical_pairs(mu_raw(d).pairs))


def mu_power(d: Diagram, k: int) -> Diagram:
    k %= 2 * d.ell
    out = Diagram(d.ell, canonical_pairs(d.pairs))
    for _ in range(k):
        out = mu(out)
    return out


# ---------------------------------------------------------------- sigma


def _flip(pair: Pair, ell: int) -> Pair:
    a, b = pair
    return (ell + 1 - b, ell + 1 - a)


def sigma(d: Diagram) -> Diagram:
    if not d.pairs:
        raise ValueError("sigma needs at least one point")
    return Diagram(d.ell, d.pairs[1:] + (_flip(d.pairs[0], d.ell),))


def sigma_inverse(d: Diagram) -> Diagram:
    if not d.pairs:
        raise ValueError("sigma needs at least one point")
    return Diagram(d.ell, (_flip(d.pairs[-1], d.ell),) + d.pairs[:-1])


def sigma_power(d: Diagram, k: int) -> Diagram:
    if d.p:
        k %= 2 * d.p
    for _ in range(k):
        d = sigma(d)
    return d


def sigma_class_neighbors(d: Diagram) -> set[Diagram]:
    """Canonical sigma images over all representatives of the class of ``d``.

    Only the piece that ends up first matters, so one image per piece that can
    be commuted to the front.
    """
    out = set()
    ps = d.pairs
    for pos in sorted(minimal_front_positions(d)):
        rest = ps[:pos - 1] + ps[pos:]
        out.add(Diagram(d.ell, canonical_pairs(rest + (_flip(ps[pos - 1], d.ell),))))
    return out


# ---------------------------------------------------------------- triangle relation


def _check_pattern_args(c: int, i: int, t: int, ell: int | None) -> None:
    if t < 2 or c < 1 or not 0 <= i <= t or (ell is not None and c + t > ell):
        raise ValueError(f"pattern parameters out of range: c={c}, i={i}, t={t}, ell={ell}")


def tru_pattern(c: int, i: int, t: int, ell: int | None = None) -> tuple[Pair, ...]:
    """The crossing line passes above the central point (shifted by ``c``)."""
    _check_pattern_args(c, i, t, ell)
    rel = [(k, k + 1) for k in range(i, t)]
    rel.append((0, t - 1))
    rel += [(k, k + 1) for k in range(t - 1, t - i - 1, -1)]
    return tuple((c + a, c + b) for a, b in rel)


def trd_pattern(c: int, i: int, t: int, ell: int | None = None) -> tuple[Pair, ...]:
    """The crossing line passes below the central point (shifted by ``c``)."""
    _check_pattern_args(c, i, t, ell)
    rel = [(k, k + 1) for k in range(i - 1, -1, -1)]
    rel.append((1, t))
    rel += [(k, k + 1) for k in range(0, t - i)]
    return tuple((c + a, c + b) for a, b in rel)


@dataclass(frozen=True)
class DeltaRule:
    c: int
    i: int
    t: int
    direction: str  # "up" rewrites tru -> trd, "down" rewrites trd -> tru
    source: tuple[Pair, ...]
    target: tuple[Pair, ...]


def delta_rules(ell: int, multiplicities: Iterable[int] | None = None, ends: bool = True) -> list[DeltaRule]:
    """All rewrite rules whose central point has one of the given multiplicities."""
    ts = sorted(set(multiplicities)) if multiplicities is not None else range(2, ell)
    rules = []
    for t in ts:
        if t < 2:
            continue
        lo, hi = (0, t) if ends else (1, t - 1)
        for c in range(1, ell - t + 1):
            for i in range(lo, hi + 1):
                up, down = tru_pattern(c, i, t), trd_pattern(c, i, t)
                rules.append(DeltaRule(c, i, t, "up", up, down))
                rules.append(DeltaRule(c, i, t, "down", down, up))
    return rules


@dataclass(frozen=True)
class DeltaMove:
    positions: tuple[int, ...]  # 1-based, increasing
    rule: DeltaRule

    @property
    def direction(self) -> str:
        return self.rule.direction


def _rules_by_first(d: Diagram, ends: bool) -> dict[Pair, list[DeltaRule]]:
    mults = {b - a + 1 for a, b in d.pairs}
    table: dict[Pair, list[DeltaRule]] = {}
    for r in delta_rules(d.ell, mults, ends):
        table.setdefault(r.source[0], []).append(r)
    return table


def delta_moves(d: Diagram, policy: str = "equiv", ends: bool = True) -> list[DeltaMove]:
    """Occurrences of a triangle pattern in ``d``.

    ``policy="equiv"`` finds occurrences that some equivalent diagram has as a
    contiguous block; ``"literal"`` only contiguous blocks of ``d`` itself.
    Consecutive pattern pieces never commute, so each piece must be the first
    occurrence of its pair after the previous piece.
    """
    if policy not in ("equiv", "literal"):
        raise ValueError(f"unknown delta policy {policy!r}")
    ps = d.pairs
    p = len(ps)
    moves = []
    for rules_start, rules in _rules_by_first(d, ends).items():
        for s in range(p):
            if ps[s] != rules_start:
                continue
            for rule in rules:
                src = rule.source
                if policy == "literal":
                    if ps[s:s + len(src)] == src:
                        moves.append(DeltaMove(tuple(range(s + 1, s + len(src) + 1)), rule))
                    continue
                sel = [s]
                for q in src[1:]:
                    z = sel[-1] + 1
                    while z < p and ps[z] != q:
                        z += 1
                    if z == p:
                        break
                    sel.append(z)
                else:
                    positions = tuple(z + 1 for z in sel)
                    if extract_contiguous(d, positions) is not None:
                        moves.append(DeltaMove(positions, rule))
    moves.sort(key=lambda m: (m.positions, m.rule.t, m.rule.c, m.rule.i, m.rule.direction))
    return moves


def apply_delta(d: Diagram, move: DeltaMove, canonical: bool = True) -> Diagram:
    """Rewrite the block selected by ``move``; raises ValueError on a stale move."""
    src = move.rule.source
    if tuple(d.pairs[z - 1] for z in move.positions if 0 < z <= d.p) != src:
        raise ValueError(f"stale delta move {move} for {d}")
    parts = extract_contiguous(d, move.positions)
    if parts is None:
        raise ValueError(f"delta block {move.positions} cannot be made contiguous in {d}")
    before, _, after = parts
    pairs = before + move.rule.target + after
    if canonical:
        pairs = canonical_pairs(pairs)
    return Diagram(d.ell, pairs)


def delta_neighbors(d: Diagram, policy: str = "equiv", ends: bool = True) -> set[Diagram]:
    return {apply_delta(d, m) for m in delta_moves(d, policy, ends)}


def literal_delta_images(pairs: Sequence[Pair], rules: Sequence[DeltaRule]) -> list[tuple[Pair, ...]]:
    """Raw rewrites of contiguous blocks, without any reordering."""
    out = []
    for r in rules:
        n = len(r.source)
        for s in range(len(pairs) - n + 1):
            if pairs[s] == r.source[0] and tuple(pairs[s:s + n]) == r.source:
                out.append(tuple(pairs[:s]) + r.target + tuple(pairs[s + n:]))
    return out
