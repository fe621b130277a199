"""Bit-packed per-site state storage.

A ChunkSet holds `chunk_count` fixed-width fields packed into 64-bit
words. The chunk width is the lowest power of two that can represent
every distinct value a field may take, so chunks never straddle a word
boundary and get/set reduce to one shift and mask.
"""

from __future__ import annotations

WORD_BITS = 64
_VALID_BITS = (1, 2, 4, 8, 16, 32)


def bits_for(num_values: int) -> int:
    """Lowest power-of-2 chunk width able to hold `num_values` distinct values."""
    if num_values < 2:
        return 1
    needed = (num_values - 1).bit_length()
    for b in _VALID_BITS:
        if b >= needed:
            return b
    raise ValueError(f"cannot pack {num_values} distinct values into one chunk")


class ChunkSet:
    __slots__ = ("chunk_bits", "chunk_count", "words")

    def __init__(self, chunk_bits: int, chunk_count: int, words: list[int] | None = None):
        if chunk_bits not in _VALID_BITS:
            raise ValueError(f"chunk_bits must be one of {_VALID_BITS}")
        self.chunk_bits = chunk_bits
        self.chunk_count = chunk_count
        num_words = -(-chunk_bits * chunk_count // WORD_BITS)  # ceil division
        if words is None:
            self.words = [0] * num_words
        else:
            if len(words) != num_words:
                raise ValueError("word storage does not match chunk geometry")
            self.words = words

    @classmethod
    def for_values(cls, num_values: int, chunk_count: int) -> "ChunkSet":
        return cls(bits_for(num_values), chunk_count)

    def get(self, i: int) -> int:
        if not 0 <= i < self.chunk_count:
            raise IndexError(f"chunk index {i} out of range")
        bits = self.chunk_bits
        pos = i * bits
        return (self.words[pos >> 6] >> (pos & 63)) & ((1 << bits) - 1)

    def set(self, i: int, v: int) -> None:
        if not 0 <= i < self.chunk_count:
            raise IndexError(f"chunk index {i} out of range")
        bits = self.chunk_bits
        if not 0 <= v < (1 << bits):
            raise ValueError(f"value {v} does not fit in {bits} bits")
        pos = i * bits
        w, shift = pos >> 6, pos & 63
        mask = ((1 << bits) - 1) << shift
        self.words[w] = (self.words[w] & ~mask) | (v << shift)

    def fill(self, v: int) -> None:
        for i in range(self.chunk_count):
            self.set(i, v)

    def copy(self) -> "ChunkSet":
        dup = ChunkSet.__new__(ChunkSet)
        dup.chunk_bits = self.chunk_bits
        dup.chunk_count = self.chunk_count
        dup.words = self.words.copy()
        return dup

    def to_list(self) -> list[int]:
        return [self.get(i) for i in range(self.chunk_count)]

    def storage_bits(self) -> int:
        return len(self.words) * WORD_BITS

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChunkSet)
                and self.chunk_bits == other.chunk_bits
                and self.chunk_count == other.chunk_count
                and self.words == other.words)

    def __repr__(self) -> str:
        return f"ChunkSet(bits={self.chunk_bits}, count={self.chunk_count})"
