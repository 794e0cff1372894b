"""Partitions used as permutation cycle types."""

import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce


@dataclass(frozen=True, order=True)
class CycleType:
    """A partition, stored with parts sorted in descending order."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError("a cycle type needs at least one part, all parts >= 1")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts):
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return cls(tuple(parts))

    @classmethod
    def identity(cls, n):
        return cls((1,) * n)

    @classmethod
    def parse(cls, text):
        """Comma list with run-length items, e.g. ``3,3,1x43``."""
        parts = []
        for item in text.replace(" ", "").split(","):
            if not item:
                continue
            if "x" in item:
                k, m = item.split("x")
                parts += [int(k)] * int(m)
            else:
                parts.append(int(item))
        return cls(tuple(parts))

    @property
    def degree(self):
        return sum(self.parts)

    @property
    def order(self):
        return reduce(math.lcm, self.parts, 1)

    def count(self, k):
        return self.parts.count(k)

    def counter(self):
        return Counter(self.parts)

    def is_full(self):
        return len(self.parts) == 1

    def to_text(self):
        out = []
        for k, m in sorted(self.counter().items(), reverse=True):
            out.append(f"{k}x{m}" if m > 2 else ",".join([str(k)] * m))
        return ",".join(out)

    def __str__(self):
        out = []
        for k, m in sorted(self.counter().items(), reverse=True):
            out.append(str(k) if m == 1 else f"{k}^{m}")
        return "(" + ",".join(out) + ")"

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)
