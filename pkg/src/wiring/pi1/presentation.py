"""Presentations of the affine and projective fundamental groups.

Point ``i`` of a diagram contributes the relations read off its skeleton:
the initial segment over ``[a_i, b_i]`` moved by the half-twists of the
earlier points, the twist of point ``i-1`` acting first and that of point 1
last.  On loops this is the automorphism ``H_1 o H_2 o ... o H_{i-1}``
applied to ``G_{a_i}, ..., G_{b_i}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..diagram import Diagram, require_valid
from . import words as W
from .braid import CCW, halftwist_auto


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple[W.Word, ...]
    provenance: tuple[int, ...] = ()  # point index per relator, 0 for the projective one

    def to_text(self) -> str:
        lines = [f"gens {self.ngens}"]
        lines += [W.format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "gens": self.ngens,
            "relators": [list(r) for r in self.relators],
            "provenance": list(self.provenance),
        }

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("gens"):
            raise ValueError("presentation text must start with 'gens <n>'")
        n = int(lines[0].split()[1])
        rels = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:])
        return cls(n, rels)

    def relators_of_point(self, i: int) -> tuple[W.Word, ...]:
        return tuple(r for r, src in zip(self.relators, self.provenance) if src == i)


def skeleton_autos(d: Diagram, orientation: str = CCW) -> list[tuple[W.Word, ...]]:
    """Images of the generators under ``H_1 o ... o H_{i-1}``, for each point ``i``."""
    ell = d.ell
    current = tuple((g,) for g in range(1, ell + 1))
    out = []
    for pair in d.pairs:
        out.append(current)
        twist = halftwist_auto(pair, ell, orientation)
        current = tuple(substitute(current, img) for img in twist.images)
    return out


def point_relation_words(d: Diagram, i: int, orientation: str = CCW) -> list[W.Word]:
    require_valid(d)
    if not 1 <= i <= d.p:
        raise ValueError(f"point index {i} outside 1..{d.p}")
    images = skeleton_autos(Diagram(d.ell, d.pairs[:i]), orientation)[i - 1]
    a, b = d.pairs[i - 1]
    return [images[j - 1] for j in range(a, b + 1)]


def relations_of_point(words: Sequence[W.Word]) -> list[W.Word]:
    """Relators equating consecutive cyclic shifts of ``w_m ... w_1``."""
    m = len(words)
    if m < 2:
        raise ValueError("a point needs at least two loops")
    factors = list(reversed(words))  # w_m, ..., w_1
    shifts = [factors[m - k:] + factors[:m - k] for k in range(m)]
    prods = [W.mul(*s) for s in shifts]
    out = []
    for k in range(m - 1):
        r = W.cyclic_normal(W.mul(prods[k], W.inverse(prods[k + 1])))
        if r:
            out.append(r)
    return out


def affine_presentation(d: Diagram, orientation: str = CCW) -> Presentation:
    require_valid(d)
    rels, prov = [], []
    for n, (images, (a, b)) in enumerate(zip(skeleton_autos(d, orientation), d.pairs), 1):
        for r in relations_of_point([images[j - 1] for j in range(a, b + 1)]):
            rels.append(r)
            prov.append(n)
    return Presentation(d.ell, tuple(rels), tuple(prov))


def projective_presentation(d: Diagram, orientation: str = CCW) -> Presentation:
    aff = affine_presentation(d, orientation)
    bw = W.cyclic_normal(W.boundary_word(d.ell))
    return Presentation(d.ell, aff.relators + (bw,), aff.provenance + (0,))


def presentation(d: Diagram, space: str = "affine", orientation: str = CCW) -> Presentation:
    if space == "affine":
        return affine_presentation(d, orientation)
    if space == "projective":
        return projective_presentation(d, orientation)
    raise ValueError(f"unknown space {space!r}")


def sigma_isomorphism_map(d: Diagram) -> tuple[W.Word, ...]:
    """Images of ``G_1..G_ell`` in the generators of the group of ``sigma(d)``.

    With first pair ``<a, a+s>``, ``G_{a+j}`` goes to ``G_{a+s-j}`` conjugated by
    ``(G_{a+s-j-1} ... G_a)^-1``, and generators outside the window are fixed.
    """
    if not d.pairs:
        raise ValueError("sigma needs at least one point")
    a, b = d.pairs[0]
    s = b - a
    images = [(g,) for g in range(1, d.ell + 1)]
    for j in range(s + 1):
        tail = tuple(range(a + s - j - 1, a - 1, -1))  # G_{a+s-j-1} ... G_a
        images[a + j - 1] = W.mul(W.inverse(tail), (a + s - j,), tail)
    return tuple(images)


def substitute(images: Sequence[W.Word], word: Sequence[int]) -> W.Word:
    out: list[int] = []
    for x in word:
        img = images[x - 1] if x > 0 else W.inverse(images[-x - 1])
        out.extend(img)
    return W.reduce(out)
