"""Independent check for small signatures: search over raw diagrams.

Nothing here uses canonical forms.  Every valid word with the signature is a
node; edges are swaps of adjacent disjoint pairs plus the raw moves.  Delta
rewrites only literal blocks of the raw word, which together with the swaps
covers every occurrence up to commutation.
"""
from __future__ import annotations

from collections import deque

from ..actions import delta_rules, literal_delta_images, mu_raw, sigma, tau
from ..diagram import Diagram, Signature, check_suip, reverse_window
from ..trace import disjoint
from .classes import MoveSet


def raw_words(sig: Signature, ell: int) -> list[tuple]:
    if not check_suip(sig, ell):
        return []
    rem = sig.as_dict()
    cand = sorted((a, a + k - 1) for k in rem for a in range(1, ell - k + 2))
    slots = list(range(1, ell + 1))
    word, out = [], []

    def rec():
        if len(word) == sig.p:
            if slots == sorted(slots, reverse=True):
                out.append(tuple(word))
            return
        for a, b in cand:
            k = b - a + 1
            if rem[k] and all(slots[z] < slots[z + 1] for z in range(a - 1, b - 1)):
                rem[k] -= 1
                word.append((a, b))
                reverse_window(slots, a, b)
                rec()
                reverse_window(slots, a, b)
                word.pop()
                rem[k] += 1

    rec()
    return out


def oracle_count(sig: Signature, ell: int, moves: MoveSet, ends: bool = True, words=None) -> int:
    """Number of components among raw diagrams."""
    words = raw_words(sig, ell) if words is None else words
    rules = delta_rules(ell, [k for k, _ in sig.counts], ends) if moves.delta else []
    seen: set = set()
    components = 0
    for w0 in words:
        if w0 in seen:
            continue
        components += 1
        seen.add(w0)
        queue = deque([w0])
        while queue:
            w = queue.popleft()
            nbrs = [w[:i] + (w[i + 1], w[i]) + w[i + 2:] for i in range(len(w) - 1) if disjoint(w[i], w[i + 1])]
            d = Diagram(ell, w)
            if moves.sigma:
                nbrs.append(sigma(d).pairs)
            if moves.tau:
                nbrs.append(tau(d).pairs)
            if moves.mu:
                nbrs.append(mu_raw(d).pairs)
            if moves.delta:
                nbrs.extend(literal_delta_images(w, rules))
            for v in nbrs:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return components
