"""Counter-based random word tape.

Word i of the stream with seed s is ``mix64(s + i*GOLDEN) mod n`` where
mix64 is the splitmix64 finalizer.  Being a pure function of (seed, index)
the stream is random-access, reproducible, and trivially splittable:
per-vertex blocks just re-derive the seed from (seed, vertex).

Everything here is plain-int arithmetic masked to 64 bits; a vectorized
numpy variant is provided for bulk draws, and the compiled kernels carry
an equivalent uint64 implementation (parity-tested).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
BLOCK_SALT = 0xD1342543DE82EF95

SHARED = "shared"
BLOCKS = "blocks"


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def tape_word(seed: int, index: int, n: int) -> int:
    """Word `index` of stream `seed`: a value in 0..n-1."""
    return mix64((seed + index * GOLDEN) & MASK64) % n


def tape_words(seed: int, start: int, count: int, n: int) -> np.ndarray:
    """Vectorized ``tape_word`` for indices start..start+count-1."""
    i = np.arange(start, start + count, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + i * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return (z % np.uint64(n)).astype(np.int64)


def block_seed(seed: int, u: int) -> int:
    """Stream seed of the per-vertex block r_u; a pure function of (seed, u)."""
    return mix64((seed + (u + 1) * BLOCK_SALT) & MASK64)


def derive_seed(base: int, *parts: object) -> int:
    """64-bit seed derived from a base seed and purpose labels.

    Stable across platforms and Python versions (sha256 of the repr).
    """
    h = hashlib.sha256()
    h.update(str(int(base)).encode())
    for p in parts:
        h.update(b"|")
        h.update(repr(p).encode())
    return int.from_bytes(h.digest()[:8], "little")


@dataclass
class RandomTape:
    """Seeded source of uniform vertex indices.

    In ``shared`` mode successive calls consume one ongoing stream.  In
    ``blocks`` mode each query vertex u reads its own block, so the words
    seen for u depend only on (seed, u).
    """

    seed: int
    mode: str = SHARED
    _cursor: int = field(default=0, repr=False)

    def __post_init__(self) -> None:
        if self.mode not in (SHARED, BLOCKS):
            raise ValueError(f"unknown tape mode {self.mode!r}")

    def stream_for(self, u: int) -> tuple[int, int]:
        """(stream seed, start index) for a query on vertex u."""
        if self.mode == BLOCKS:
            return block_seed(self.seed, u), 0
        return self.seed, self._cursor

    def advance(self, consumed: int) -> None:
        """Record words consumed by a shared-stream call (no-op for blocks)."""
        if self.mode == SHARED:
            self._cursor += consumed

    def draw(self, u: int, count: int, n: int) -> np.ndarray:
        """Draw `count` words for a query on u and advance the shared cursor."""
        s, start = self.stream_for(u)
        out = tape_words(s, start, count, n)
        self.advance(count)
        return out
