"""Permutations of {0, ..., m-1}, written in cycle notation on labels 1..m.

The product ``a * b`` applies ``a`` first, then ``b`` (right action), so
``(a * b)(i) == b(a(i))``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]] | Sequence[int]) -> Permutation:
        """Build from cycles given on labels 1..degree.

        A single flat cycle such as ``(1, 4, 9)`` is accepted as well as a
        sequence of cycles.
        """
        if cycles and isinstance(cycles[0], int):
            cycles = [cycles]
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for label in cyc:
                if not 1 <= label <= degree:
                    raise IndexError(f"label {label} outside 1..{degree}")
                if label in seen:
                    raise ValueError(f"label {label} repeated in {cycles}")
                seen.add(label)
            for i, label in enumerate(cyc):
                images[label - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self) -> Permutation:
        out = [0] * self.degree
        for i, j in enumerate(self.images):
            out[j] = i
        return Permutation(out)

    def __pow__(self, e: int) -> Permutation:
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles on labels 1..m, each starting at its least label."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(c + 1 for c in cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def restricted(self, points: Sequence[int]) -> Permutation:
        """The induced permutation on an invariant subset (0-based points), relabelled 0..k-1."""
        pos = {pt: k for k, pt in enumerate(points)}
        try:
            return Permutation(pos[self.images[pt]] for pt in points)
        except KeyError:
            raise ValueError("subset is not invariant") from None

    def __repr__(self):
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"
