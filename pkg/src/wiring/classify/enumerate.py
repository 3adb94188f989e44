"""Depth-first enumeration of canonical valid diagrams with a given signature.

A partial word is extended by a pair only if

* the wires in its window are still in increasing order (each pair of wires
  crosses at most once, so with the right crossing total the result is J),
* the word stays in lexicographic normal form: walking back over the letters
  that commute with the new one, none may be larger,
* some remaining multiplicity can still be realized: a point of multiplicity
  ``k`` needs ``k`` wires still in increasing order, so the longest increasing
  subsequence of the current wire order must be at least ``k``.

Candidates are tried in increasing order, so every shard (a fixed first two
pairs) emits its words sorted and the shards concatenate to a sorted store.
"""
from __future__ import annotations

import json
import logging
import os
import resource
import time
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from ..diagram import Signature, check_suip, encode_pairs
from .store import ClassStore

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """A time, memory or node budget ran out; completed work is checkpointed."""


@dataclass(frozen=True)
class Budget:
    seconds: float | None = None
    memory_bytes: int | None = None
    nodes: int | None = None


def _lis(seq: list[int]) -> int:
    tails: list[int] = []
    for x in seq:
        i = bisect_left(tails, x)
        if i == len(tails):
            tails.append(x)
        else:
            tails[i] = x
    return len(tails)


class _Enumerator:
    def __init__(self, ell: int, sig: Signature, budget: Budget, deadline: float | None):
        self.ell = ell
        self.p = sig.p
        self.rem = sig.as_dict()
        self.cand = sorted(((a << 4) | (a + k - 1), a, a + k - 1, k) for k in self.rem for a in range(1, ell - k + 2))
        codes = [c[0] for c in self.cand]
        self.commute = {
            (x, y): (x & 15) < (y >> 4) or (y & 15) < (x >> 4) for x in codes for y in codes
        }
        self.slots = list(range(1, ell + 1))
        self.word: list[int] = []
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0

    def _fits(self, code: int, a: int, b: int) -> bool:
        s = self.slots
        for z in range(a - 1, b - 1):
            if s[z] > s[z + 1]:
                return False
        for w in reversed(self.word):
            if not self.commute[w, code]:
                break
            if w > code:
                return False
        return True

    def _push(self, code, a, b, k):
        self.rem[k] -= 1
        self.word.append(code)
        self.slots[a - 1:b] = self.slots[a - 1:b][::-1]

    def _pop(self, a, b, k):
        self.rem[k] += 1
        self.word.pop()
        self.slots[a - 1:b] = self.slots[a - 1:b][::-1]

    def children(self) -> Iterator[tuple[int, int, int, int]]:
        for c in self.cand:
            if self.rem[c[3]] and self._fits(c[0], c[1], c[2]):
                yield c

    def prefixes(self, depth: int) -> list[tuple[tuple[int, int, int, int], ...]]:
        out = []

        def rec(acc):
            if len(acc) == depth or len(self.word) == self.p:
                out.append(tuple(acc))
                return
            for c in list(self.children()):
                self._push(*c)
                acc.append(c)
                rec(acc)
                acc.pop()
                self._pop(*c[1:])

        rec([])
        return out

    def _tick(self):
        if self.budget.nodes is not None and self.nodes > self.budget.nodes:
            raise BudgetExceeded(f"enumeration exceeded {self.budget.nodes} nodes")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("enumeration exceeded its time budget")

    def run(self, prefix) -> list[bytes]:
        for c in prefix:
            self._push(*c)
        out: list[bytes] = []
        self._rec(out)
        for c in reversed(prefix):
            self._pop(*c[1:])
        return out

    def _rec(self, out: list[bytes]) -> None:
        self.nodes += 1
        if not self.nodes & 0x1FFF:
            self._tick()
        if len(self.word) == self.p:
            out.append(bytes(self.word))
            return
        need = max((k for k, n in self.rem.items() if n), default=0)
        if need >= 3 and _lis(self.slots) < need:
            return
        for c in self.cand:
            code, a, b, k = c
            if not self.rem[k] or not self._fits(code, a, b):
                continue
            self._push(code, a, b, k)
            self._rec(out)
            self._pop(a, b, k)


def _check(sig: Signature, ell: int) -> None:
    if not check_suip(sig, ell):
        raise ValueError(f"signature [{sig}] has {sig.crossings} crossings, {ell} wires need {ell * (ell - 1) // 2}")
    if ell > 15:
        raise ValueError("packed encoding supports at most 15 wires")
    if any(k > ell for k in sig.as_dict()):
        raise ValueError(f"signature [{sig}] has a point with more than {ell} wires")


def enumerate_words(sig: Signature, ell: int, budget: Budget = Budget()) -> list[bytes]:
    """All canonical valid words, packed and sorted, in memory."""
    _check(sig, ell)
    deadline = time.monotonic() + budget.seconds if budget.seconds else None
    return _Enumerator(ell, sig, budget, deadline).run(())


def _shard_worker(args) -> tuple[int, list[bytes], int]:
    ell, sig_text, prefix_codes, index, budget, deadline_wall = args
    sig = Signature.parse(sig_text)
    deadline = None
    if deadline_wall is not None:
        deadline = time.monotonic() + max(0.0, deadline_wall - time.time())
    en = _Enumerator(ell, sig, budget, deadline)
    by_code = {c[0]: c for c in en.cand}
    words = en.run(tuple(by_code[x] for x in prefix_codes))
    return index, words, en.nodes


def _rss_bytes() -> int:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


def _cache_name(sig: Signature, ell: int) -> str:
    return f"classes-l{ell}-" + "_".join(f"{k}x{n}" for k, n in sig.counts)


def enumerate_classes(
    sig: Signature,
    ell: int,
    cache_dir: str | os.PathLike | None = None,
    threads: int = 1,
    budget: Budget = Budget(),
    shard_depth: int = 2,
) -> ClassStore:
    """Enumerate ``W_S`` modulo commutation, with optional checkpointing.

    With a cache directory, each finished shard is written to
    ``<name>.shards/`` and skipped on the next run; the final store is cached as
    ``<name>.wdcs``.  Running out of budget raises BudgetExceeded after all
    finished shards are on disk.
    """
    _check(sig, ell)
    final = shard_dir = None
    if cache_dir is not None:
        base = Path(cache_dir)
        base.mkdir(parents=True, exist_ok=True)
        final = base / (_cache_name(sig, ell) + ".wdcs")
        if final.exists():
            store = ClassStore.read(final)
            if store.ell == ell and store.signature == sig:
                return store
        shard_dir = base / (_cache_name(sig, ell) + ".shards")
        shard_dir.mkdir(exist_ok=True)

    start = time.time()
    deadline_wall = start + budget.seconds if budget.seconds else None
    root = _Enumerator(ell, sig, budget, None)
    prefixes = [tuple(c[0] for c in pre) for pre in root.prefixes(shard_depth)]
    manifest = {"ell": ell, "signature": str(sig), "shards": len(prefixes), "done": []}
    if shard_dir is not None:
        mpath = shard_dir / "manifest.json"
        if mpath.exists():
            old = json.loads(mpath.read_text())
            if old.get("shards") == len(prefixes) and old.get("signature") == str(sig):
                manifest["done"] = sorted(set(old.get("done", [])))

    results: dict[int, list[bytes]] = {}
    p = sig.p
    for k in manifest["done"]:
        data = (shard_dir / f"shard-{k:05d}.bin").read_bytes()
        results[k] = [data[j:j + p] for j in range(0, len(data), p)]
    todo = [k for k in range(len(prefixes)) if k not in results]
    log.info("enumerating [%s] on %d wires: %d shards, %d to do", sig, ell, len(prefixes), len(todo))
    jobs = [(ell, str(sig), prefixes[k], k, budget, deadline_wall) for k in todo]

    def record(k: int, words: list[bytes]) -> None:
        results[k] = words
        if shard_dir is not None:
            tmp = shard_dir / f"shard-{k:05d}.tmp"
            tmp.write_bytes(b"".join(words))
            os.replace(tmp, shard_dir / f"shard-{k:05d}.bin")
            manifest["done"].append(k)
            mtmp = shard_dir / "manifest.tmp"
            mtmp.write_text(json.dumps(manifest))
            os.replace(mtmp, shard_dir / "manifest.json")
        if budget.memory_bytes is not None and _rss_bytes() > budget.memory_bytes:
            raise BudgetExceeded(f"memory use above {budget.memory_bytes} bytes")
        if deadline_wall is not None and time.time() > deadline_wall and len(results) < len(prefixes):
            raise BudgetExceeded(f"time budget of {budget.seconds}s used up with {len(prefixes) - len(results)} shards left")

    if threads > 1 and len(jobs) > 1:
        from multiprocessing import get_context

        with get_context("spawn").Pool(threads) as pool:
            for k, words, _ in pool.imap_unordered(_shard_worker, jobs):
                record(k, words)
    else:
        for job in jobs:
            k, words, _ = _shard_worker(job)
            record(k, words)

    records = [w for k in range(len(prefixes)) for w in results[k]]
    store = ClassStore(ell, sig, records)
    if final is not None:
        store.write(final)
    log.info("enumerated %d classes in %.1fs", len(store), time.time() - start)
    return store
