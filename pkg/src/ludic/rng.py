"""Deterministic pseudorandom streams for playouts.

The generator is splitmix64 (Steele, Lea & Flood's mixing constants): a
64-bit counter advanced by the golden-gamma increment and scrambled by two
xor-multiply rounds. It is trivially portable, so a seeded trial is
bit-identical across platforms and across the pure-Python and compiled
playout paths, which implement the identical update.

Streams are split by index: ``split(seed, i)`` mixes the child index into
the parent seed, giving statistically independent streams for benchmark
workers and for per-candidate flat-Monte-Carlo budgets.

Uniform integers below ``n`` are taken as ``next_u64() % n``. The modulo
bias is below 2**-57 for every board in the bundled corpus (n <= 361) and
is accepted in exchange for a branch-free, path-identical implementation.
"""

MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """The splitmix64 output scramble of a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def split(seed: int, index: int) -> int:
    """Derive the seed of child stream `index` from `seed`."""
    return mix64((seed + (index + 1) * _GAMMA) & MASK64)


class Splitmix64:
    """A single splitmix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return self.next_u64() % n
