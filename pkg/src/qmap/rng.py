"""PCG32 pseudo-random generator (XSH-RR output, 64-bit LCG state).

The generator and the derived draws below are fully specified here so that
fixtures generated from a seed are reproducible on any platform and in any
language:

* state update ``s' = s * 6364136223846793005 + inc (mod 2**64)``,
  ``inc = (stream << 1) | 1``;
* output: ``x = ((s >> 18) ^ s) >> 27`` truncated to 32 bits, rotated right
  by ``s >> 59``, computed from the state *before* the update;
* seeding: ``s = 0``, step, ``s += seed``, step;
* ``below(n)``: rejection sampling, discard outputs ``< 2**32 mod n``, then
  take the output modulo ``n``;
* ``random()``: ``next_u32() / 2**32``;
* ``sample(n, k)``: the first ``k`` slots of a Fisher-Yates shuffle of
  ``range(n)``, slot ``i`` swapped with ``i + below(n - i)``.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1
_MULT = 6364136223846793005
DEFAULT_STREAM = 54


class PCG32:
    def __init__(self, seed: int, stream: int = DEFAULT_STREAM):
        self.inc = ((stream << 1) | 1) & _MASK64
        self.state = 0
        self.next_u32()
        self.state = (self.state + seed) & _MASK64
        self.next_u32()

    def next_u32(self) -> int:
        old = self.state
        self.state = (old * _MULT + self.inc) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & _MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & _MASK32

    def below(self, n: int) -> int:
        if not 0 < n <= _MASK32 + 1:
            raise ValueError("bound must be in [1, 2**32]")
        threshold = (1 << 32) % n
        while True:
            r = self.next_u32()
            if r >= threshold:
                return r % n

    def random(self) -> float:
        return self.next_u32() / 4294967296.0

    def sample(self, n: int, k: int) -> list[int]:
        """``k`` distinct integers from ``range(n)``, in draw order."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        swapped: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.below(n - i)
            vi, vj = swapped.get(i, i), swapped.get(j, j)
            swapped[j] = vi
            out.append(vj)
        return out
