"""Bit-vector sets over ``{0, ..., n-1}`` stored as Python ints."""

from __future__ import annotations

from typing import Iterable

import numpy as np


def to_mask(indices: Iterable[int] | np.ndarray, n: int) -> int:
    flags = np.zeros(n, dtype=bool)
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
    if idx.size:
        flags[idx] = True
    return flags_to_mask(flags)


def flags_to_mask(flags: np.ndarray) -> int:
    packed = np.packbits(flags.astype(bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_to_flags(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def members(mask: int, n: int) -> np.ndarray:
    """Sorted member indices of ``mask``."""
    return np.flatnonzero(mask_to_flags(mask, n))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0
