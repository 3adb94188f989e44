"""Automorphisms of the free group induced by half-twists.

The points ``1..ell`` lie on the real axis and the base point below it;
``G_i`` is the loop going straight up to point ``i``, so ``G_ell ... G_1`` is the
boundary loop.  A half-twist turns a window of points by 180 degrees
counterclockwise.  On adjacent points ``i, i+1`` it acts as::

    G_i     -> G_{i+1}
    G_{i+1} -> G_{i+1} G_i G_{i+1}^-1

which fixes the boundary word.  ``orientation="cw"`` swaps in the inverse
twist; it exists to check which relations depend on the choice.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..diagram import Pair, Permutation
from . import words as W

CCW = "ccw"
CW = "cw"


@dataclass(frozen=True)
class BraidAuto:
    """Images of ``G_1..G_n`` together with the images of the inverse map."""

    images: tuple[W.Word, ...]
    inverse_images: tuple[W.Word, ...]

    @classmethod
    def identity(cls, n: int) -> "BraidAuto":
        gens = tuple((g,) for g in range(1, n + 1))
        return cls(gens, gens)

    @property
    def ngens(self) -> int:
        return len(self.images)

    def __call__(self, word: Sequence[int]) -> W.Word:
        out: list[int] = []
        for x in word:
            img = self.images[x - 1] if x > 0 else W.inverse(self.images[-x - 1])
            for y in img:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        return tuple(out)

    def __mul__(self, other: "BraidAuto") -> "BraidAuto":
        """Composition: ``(f * g)(w) == f(g(w))``."""
        inv = other.inverse()
        return BraidAuto(
            tuple(self(img) for img in other.images),
            tuple(inv(img) for img in self.inverse_images),
        )

    def inverse(self) -> "BraidAuto":
        return BraidAuto(self.inverse_images, self.images)

    def is_identity(self) -> bool:
        return all(img == (g,) for g, img in enumerate(self.images, 1))

    def induced_permutation(self) -> Permutation:
        """Each image is a conjugate of a generator; map ``i`` to that generator."""
        out = []
        for img in self.images:
            core = W.cyclic_reduce(img)
            if len(core) != 1 or core[0] < 0:
                raise ValueError(f"image {img} is not a conjugate of a generator")
            out.append(core[0])
        return Permutation(tuple(out))


def elementary_auto(i: int, sign: int, ell: int, orientation: str = CCW) -> BraidAuto:
    """Twist of points ``i, i+1``; ``sign=-1`` gives the inverse."""
    if not 1 <= i < ell:
        raise ValueError(f"elementary twist index {i} outside 1..{ell - 1}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if orientation == CW:
        sign = -sign
    elif orientation != CCW:
        raise ValueError(f"unknown orientation {orientation!r}")
    fwd = [(g,) for g in range(1, ell + 1)]
    fwd[i - 1] = (i + 1,)
    fwd[i] = (i + 1, i, -(i + 1))
    back = [(g,) for g in range(1, ell + 1)]
    back[i - 1] = (-i, i + 1, i)
    back[i] = (i,)
    if sign > 0:
        return BraidAuto(tuple(fwd), tuple(back))
    return BraidAuto(tuple(back), tuple(fwd))


def halftwist_auto(pair: Pair, ell: int, orientation: str = CCW, sign: int = 1) -> BraidAuto:
    """Half-twist of the window ``[a, b]``: ``(s_a..s_{b-1})(s_a..s_{b-2})...(s_a)``."""
    a, b = pair
    if not 1 <= a < b <= ell:
        raise ValueError(f"bad window {pair} for {ell} points")
    out = BraidAuto.identity(ell)
    for top in range(b - 1, a - 1, -1):
        for k in range(a, top + 1):
            out = out * elementary_auto(k, sign, ell, orientation)
    return out


def boundary_fixed(f: BraidAuto) -> bool:
    bw = W.boundary_word(f.ngens)
    return f(bw) == bw
