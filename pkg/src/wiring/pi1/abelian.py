"""Abelianization through integer diagonalization of the exponent matrix."""
from __future__ import annotations

from typing import Sequence

from .words import abelianize


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, each dividing the next."""
    a = [list(row) for row in matrix if any(row)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    diag = []
    r = 0
    while r < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(r, m) for j in range(r, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[r], a[pi] = a[pi], a[r]
        for row in a:
            row[r], row[pj] = row[pj], row[r]
        done = False
        while not done:
            done = True
            piv = a[r][r]
            for i in range(r + 1, m):
                q = a[i][r] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if a[i][r]:
                    done = False
            for j in range(r + 1, n):
                q = a[r][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[r]
                if a[r][j]:
                    done = False
            if not done:
                # a remainder is smaller than the pivot: move it into place
                _, pi, pj = min((abs(a[i][j]), i, j) for i in range(r, m) for j in range(r, n)
                                if a[i][j] and (i == r or j == r))
                a[r], a[pi] = a[pi], a[r]
                for row in a:
                    row[r], row[pj] = row[pj], row[r]
                continue
            # pivot must divide the rest of the matrix
            bad = next(((i, j) for i in range(r + 1, m) for j in range(r + 1, n) if a[i][j] % piv), None)
            if bad is not None:
                a[r] = [x + y for x, y in zip(a[r], a[bad[0]])]
                done = False
        diag.append(abs(a[r][r]))
        r += 1
    return diag


def abelianization_of(ngens: int, relators: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """``(free rank, torsion divisors)`` of the abelianized group."""
    rows = [abelianize(r, ngens) for r in relators]
    diag = smith_diagonal(rows)
    return ngens - len(diag), tuple(d for d in diag if d > 1)
