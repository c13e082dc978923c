"""Packed adjacency rows (uint64 words) used by the backtracking searches."""

from __future__ import annotations

import numpy as np

WORD = 64


def n_words(n: int) -> int:
    return (n + WORD - 1) // WORD


def pack_rows(n: int, neighbour_sets) -> np.ndarray:
    """Pack per-vertex neighbour sets into an (n, words) uint64 matrix."""
    w = max(1, n_words(n))
    rows = np.zeros((n, w), dtype=np.uint64)
    for v in range(n):
        for u in neighbour_sets[v]:
            rows[v, u >> 6] |= np.uint64(1 << (u & 63))
    return rows


def full_mask(n: int) -> np.ndarray:
    """All-ones row for vertices 0..n-1, with the spare high bits cleared."""
    w = max(1, n_words(n))
    mask = np.full(w, ~np.uint64(0), dtype=np.uint64)
    spare = w * WORD - n
    if spare:
        mask[-1] = np.uint64((1 << (WORD - spare)) - 1) if n else np.uint64(0)
    return mask


def bit_row(n: int, members) -> np.ndarray:
    row = np.zeros(max(1, n_words(n)), dtype=np.uint64)
    for v in members:
        row[v >> 6] |= np.uint64(1 << (v & 63))
    return row


def has_bit(row: np.ndarray, v: int) -> bool:
    return bool((int(row[v >> 6]) >> (v & 63)) & 1)


def clear_bit(row: np.ndarray, v: int) -> None:
    row[v >> 6] &= ~np.uint64(1 << (v & 63))


def iter_bits(row: np.ndarray):
    """Yield set bit positions in ascending order."""
    for i, word in enumerate(row):
        w = int(word)
        base = i << 6
        while w:
            low = w & -w
            yield base + low.bit_length() - 1
            w ^= low


def first_bit(row: np.ndarray) -> int:
    """Lowest set bit position, or -1 if the row is empty."""
    for i, word in enumerate(row):
        w = int(word)
        if w:
            return (i << 6) + ((w & -w).bit_length() - 1)
    return -1


def any_bit(row: np.ndarray) -> bool:
    return bool(row.any())


def popcount(row: np.ndarray) -> int:
    return int(np.bitwise_count(row).sum()) if hasattr(np, "bitwise_count") else sum(
        int(w).bit_count() for w in row
    )
