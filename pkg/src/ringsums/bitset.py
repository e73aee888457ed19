"""Element sets as Python-int bitsets over ``[0, n)``."""

from __future__ import annotations

from typing import Iterable

import numpy as np


def from_bool(flags: np.ndarray) -> int:
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def from_indices(indices: Iterable[int], n: int) -> int:
    flags = np.zeros(n, dtype=bool)
    idx = np.fromiter(indices, dtype=np.int64) if not isinstance(indices, np.ndarray) else indices
    flags[idx] = True
    return from_bool(flags)


def to_bool(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def to_indices(mask: int, n: int) -> np.ndarray:
    return np.flatnonzero(to_bool(mask, n))


def contains(mask: int, i: int) -> bool:
    return (mask >> int(i)) & 1 == 1


def is_subset(a: int, b: int) -> bool:
    return a & b == a


def size(mask: int) -> int:
    return mask.bit_count()
