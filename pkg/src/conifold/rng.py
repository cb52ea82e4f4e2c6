"""Deterministic random streams.

Every "generic" draw in the package goes through :class:`Stream`.  The
algorithm is pinned: a SHA-256 digest of ``(seed, *path)`` (JSON encoded)
seeds Python's MT19937 (:class:`random.Random`), and bounded integers are
drawn by rejection sampling on ``getrandbits``.  Child streams are derived
from the master seed and a path of names/indices, so adding a task never
shifts the numbers another task sees.
"""

from __future__ import annotations

import hashlib
import json
import random

ALGORITHM = "sha256-derived MT19937, rejection sampling on getrandbits"


class Stream:
    __slots__ = ("seed", "path", "_mt")

    def __init__(self, seed: int, *path):
        if not isinstance(seed, int):
            raise TypeError("seed must be an int")
        self.seed = seed
        self.path = tuple(path)
        blob = json.dumps([seed, *self.path], separators=(",", ":")).encode()
        self._mt = random.Random(int.from_bytes(hashlib.sha256(blob).digest(), "big"))

    def child(self, *path) -> Stream:
        return Stream(self.seed, *self.path, *path)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("empty range")
        bits = n.bit_length()
        while True:
            x = self._mt.getrandbits(bits)
            if x < n:
                return x

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def __repr__(self):
        return f"Stream({self.seed}, *{self.path!r})"
