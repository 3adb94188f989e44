import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from wiring.diagram import Diagram, random_diagram
from wiring.trace import (
    ClassTooLarge,
    can_extract_contiguous,
    canonical_form,
    canonical_pairs,
    dependence_edges,
    enumerate_class,
    equivalent,
    extract_contiguous,
    is_canonical,
    is_canonical_pairs,
    maximal_back_positions,
    minimal_front_positions,
)

from conftest import KELLY_MOSER


def test_disjoint_pairs_commute():
    d = Diagram(4, ((3, 4), (1, 2)))
    assert canonical_pairs(d.pairs) == ((1, 2), (3, 4))
    assert equivalent(d, Diagram(4, ((1, 2), (3, 4))))
    # touching intervals do not commute
    assert canonical_pairs(((2, 3), (1, 2))) == ((2, 3), (1, 2))


def test_paper_mu_example_reordering_is_equivalent():
    a = Diagram(5, ((4, 5), (2, 4), (1, 2), (4, 5), (2, 3), (3, 4), (4, 5), (2, 3)))
    b = Diagram(5, ((4, 5), (2, 4), (4, 5), (1, 2), (2, 3), (3, 4), (4, 5), (2, 3)))
    assert equivalent(a, b)


def _random_words(rng, n, top=6):
    for _ in range(n):
        yield random_diagram(rng.randint(2, top), rng)


def test_canonical_is_least_member_of_class(rng):
    for d in _random_words(rng, 150):
        try:
            members = enumerate_class(d, node_cap=20000)
        except ClassTooLarge:
            continue
        assert canonical_pairs(d.pairs) == min(members)
        assert all(canonical_pairs(m) == canonical_pairs(d.pairs) for m in members)
        canon = min(members)
        assert all(is_canonical_pairs(m) == (m == canon) for m in members)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10**6))
def test_canonical_form_idempotent(ell, seed):
    d = random_diagram(ell, random.Random(seed))
    c = canonical_form(d)
    assert canonical_form(c) == c
    assert is_canonical(c)


def test_minimal_and_maximal_positions():
    d = Diagram(5, ((1, 2), (3, 4), (2, 3), (4, 5)))
    assert minimal_front_positions(d) == {1, 2}
    assert maximal_back_positions(d) == {3, 4}
    assert (1, 3) in dependence_edges(d) and (1, 2) not in dependence_edges(d)


def test_extract_contiguous_matches_bruteforce(rng):
    for d in _random_words(rng, 60, top=5):
        members = enumerate_class(d)
        ps = d.pairs
        for k in (2, 3):
            for sel in combinations(range(d.p), k):
                # brute force: does a member carry these pieces adjacent, in order?
                # identify pieces by (pair, occurrence number)
                tags = []
                seen = {}
                for q in ps:
                    seen[q] = seen.get(q, 0) + 1
                    tags.append((q, seen[q]))
                want = [tags[i] for i in sel]
                found = False
                for m in members:
                    cnt, mt = {}, []
                    for q in m:
                        cnt[q] = cnt.get(q, 0) + 1
                        mt.append((q, cnt[q]))
                    for s in range(len(mt) - k + 1):
                        if mt[s:s + k] == want:
                            found = True
                            break
                    if found:
                        break
                positions = [i + 1 for i in sel]
                assert can_extract_contiguous(d, positions) == found, (d, positions)
                if found:
                    before, block, after = extract_contiguous(d, positions)
                    assert equivalent(d, Diagram(d.ell, before + block + after))


def test_extract_rejects_nonconvex_block():
    d = Diagram(4, ((1, 2), (2, 3), (1, 2), (3, 4), (2, 3), (1, 2)))
    assert not can_extract_contiguous(d, [2, 3, 5])
    assert can_extract_contiguous(d, [1, 2, 3])


def test_enumerate_class_cap():
    d = Diagram(12, tuple((a, a + 1) for a in range(1, 12, 2)) * 1)
    with pytest.raises(ClassTooLarge):
        enumerate_class(d, node_cap=10)


def test_kelly_moser_class():
    members = enumerate_class(KELLY_MOSER)
    assert canonical_form(KELLY_MOSER).pairs == min(members)
