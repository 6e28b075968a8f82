"""Bitset membership for figurate primes and its on-disk cache format.

Cache layout (all integers little-endian)::

    b"FGP1" | u32 version = 1 | u64 max_n | bitmap | u32 crc32(bitmap)

Bit ``j`` of bitmap byte ``k`` (LSB first) holds membership of ``8k + j + 1``.
"""

from __future__ import annotations

import os
import struct
import tempfile
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from .core import figurate_values
from .exceptions import (
    BadMagicError,
    ChecksumMismatchError,
    FigurateRangeError,
    TruncatedCacheError,
    UnsupportedVersionError,
)

MAGIC = b"FGP1"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sIQ")
_TRAILER = struct.Struct("<I")

PathLike = Union[str, os.PathLike]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FigurateSet:
    """Membership table on ``[1, max_n]``.

    ``flags`` has length ``max_n + 1`` so that ``flags[i]`` is the indicator
    of ``i``; ``flags[0]`` is always False. Both arrays are read-only.
    """

    max_n: int
    flags: np.ndarray
    values: np.ndarray

    @classmethod
    def from_values(cls, max_n: int, values) -> "FigurateSet":
        values = np.asarray(values, dtype=np.int64)
        flags = np.zeros(max_n + 1, dtype=bool)
        flags[values] = True
        return cls(max_n, _frozen(flags), _frozen(np.flatnonzero(flags).astype(np.int64)))

    @classmethod
    def from_bitmap(cls, max_n: int, bitmap: bytes) -> "FigurateSet":
        bits = np.unpackbits(np.frombuffer(bitmap, dtype=np.uint8), bitorder="little")
        flags = np.zeros(max_n + 1, dtype=bool)
        flags[1:] = bits[:max_n].astype(bool)
        return cls(max_n, _frozen(flags), _frozen(np.flatnonzero(flags).astype(np.int64)))

    def bitmap(self) -> bytes:
        return np.packbits(self.flags[1:], bitorder="little").tobytes()

    def __contains__(self, i: object) -> bool:
        return isinstance(i, (int, np.integer)) and 1 <= i <= self.max_n and bool(self.flags[i])

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FigurateSet):
            return NotImplemented
        return self.max_n == other.max_n and np.array_equal(self.flags, other.flags)

    def __hash__(self) -> int:
        return hash((self.max_n, self.bitmap()))

    def check_range(self, i: int, lo: int = 1) -> None:
        if not lo <= i <= self.max_n:
            raise FigurateRangeError(f"{i} outside [{lo}, {self.max_n}]")


def build_set(n_max: int) -> FigurateSet:
    if n_max < 1:
        raise FigurateRangeError("n_max must be >= 1")
    return FigurateSet.from_values(n_max, figurate_values(n_max))


def is_figurate(fset: FigurateSet, i: int) -> bool:
    fset.check_range(i)
    return bool(fset.flags[i])


def _encode(fset: FigurateSet) -> bytes:
    bitmap = fset.bitmap()
    return (
        _HEADER.pack(MAGIC, FORMAT_VERSION, fset.max_n)
        + bitmap
        + _TRAILER.pack(zlib.crc32(bitmap) & 0xFFFFFFFF)
    )


def _decode(blob: bytes) -> FigurateSet:
    if len(blob) < _HEADER.size:
        raise TruncatedCacheError(f"cache header needs {_HEADER.size} bytes, got {len(blob)}")
    magic, version, max_n = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"cache version {version}, expected {FORMAT_VERSION}")
    nbytes = (max_n + 7) // 8
    expected = _HEADER.size + nbytes + _TRAILER.size
    if len(blob) != expected:
        raise TruncatedCacheError(f"cache length {len(blob)}, expected {expected}")
    bitmap = blob[_HEADER.size : _HEADER.size + nbytes]
    (crc,) = _TRAILER.unpack_from(blob, _HEADER.size + nbytes)
    if zlib.crc32(bitmap) & 0xFFFFFFFF != crc:
        raise ChecksumMismatchError("bitmap CRC32 mismatch")
    if max_n == 0:
        raise TruncatedCacheError("cache declares max_n = 0")
    return FigurateSet.from_bitmap(max_n, bitmap)


def save_cache(fset: FigurateSet, destination: Union[PathLike, BinaryIO]) -> int:
    """Write ``fset``; returns the number of bytes written.

    Paths are written through a temporary file in the same directory and
    renamed into place.
    """
    blob = _encode(fset)
    if hasattr(destination, "write"):
        destination.write(blob)
        return len(blob)
    path = Path(destination)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    return len(blob)


def load_cache(source: Union[PathLike, BinaryIO]) -> FigurateSet:
    if hasattr(source, "read"):
        return _decode(source.read())
    return _decode(Path(source).read_bytes())
