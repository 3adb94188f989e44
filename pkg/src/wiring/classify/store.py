"""Deduplicated canonical classes with a flat binary cache format.

File layout (little-endian)::

    magic     4 bytes   b"WDCS"
    version   uint16    1
    ell       uint8
    p         uint16    points per diagram
    siglen    uint16    length of the signature string
    signature siglen bytes, UTF-8, e.g. "2^13 3^3 4^1"
    count     uint64
    records   count * p bytes, one byte per pair: (a << 4) | b

Records are the packed canonical forms in increasing byte order.
"""
from __future__ import annotations

import os
import struct
from typing import Iterable, Iterator

from ..diagram import Diagram, Signature, decode_pairs

MAGIC = b"WDCS"
VERSION = 1
_HEAD = struct.Struct("<4sHBHH")
_COUNT = struct.Struct("<Q")


class StoreFormatError(ValueError):
    pass


class ClassStore:
    """Sorted packed canonical forms, addressable by index."""

    def __init__(self, ell: int, signature: Signature, records: Iterable[bytes]):
        self.ell = ell
        self.signature = signature
        self.p = signature.p
        recs = list(records)
        if any(len(r) != self.p for r in recs):
            raise ValueError(f"records must have {self.p} bytes")
        if any(x >= y for x, y in zip(recs, recs[1:])):
            raise ValueError("records must be strictly increasing")
        self.records = recs
        self._index: dict[bytes, int] | None = None

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[bytes]:
        return iter(self.records)

    def diagram(self, k: int) -> Diagram:
        return Diagram(self.ell, decode_pairs(self.records[k]))

    def diagrams(self) -> Iterator[Diagram]:
        for r in self.records:
            yield Diagram(self.ell, decode_pairs(r))

    def index_of(self, packed: bytes) -> int:
        if self._index is None:
            self._index = {r: k for k, r in enumerate(self.records)}
        return self._index[packed]

    def __contains__(self, packed: bytes) -> bool:
        try:
            self.index_of(packed)
        except KeyError:
            return False
        return True

    # ------------------------------------------------------------ file io

    def write(self, path: str | os.PathLike) -> None:
        sig = str(self.signature).encode()
        tmp = f"{path}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(_HEAD.pack(MAGIC, VERSION, self.ell, self.p, len(sig)))
            fh.write(sig)
            fh.write(_COUNT.pack(len(self.records)))
            fh.write(b"".join(self.records))
        os.replace(tmp, path)

    @classmethod
    def read(cls, path: str | os.PathLike) -> "ClassStore":
        with open(path, "rb") as fh:
            data = fh.read()
        if len(data) < _HEAD.size:
            raise StoreFormatError(f"{path}: truncated header")
        magic, version, ell, p, siglen = _HEAD.unpack_from(data)
        if magic != MAGIC:
            raise StoreFormatError(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise StoreFormatError(f"{path}: unsupported version {version}")
        off = _HEAD.size
        sig = Signature.parse(data[off:off + siglen].decode())
        off += siglen
        (count,) = _COUNT.unpack_from(data, off)
        off += _COUNT.size
        body = data[off:]
        if sig.p != p or len(body) != count * p:
            raise StoreFormatError(f"{path}: record block does not match header")
        return cls(ell, sig, (body[k * p:(k + 1) * p] for k in range(count)))
