"""Partitions with bounded parts, dominance order and nilpotent orbit dimensions."""

from __future__ import annotations

from itertools import accumulate, zip_longest
from typing import Iterator


class UnequalWeight(ValueError):
    """Two partitions of different integers were compared."""


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Parsing accepts exponent sugar, so ``Partition.parse("3,1^2")`` is
    ``(3, 1, 1)``.  The empty partition is allowed.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        parts: list[int] = []
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            if "^" in tok:
                a, b = tok.split("^")
                parts.extend([int(a)] * int(b))
            else:
                parts.append(int(tok))
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def min(self) -> int:
        return self[-1] if self else 0

    def fits(self, bound: int) -> bool:
        return not self or self[0] <= bound

    def multiplicity(self, part: int) -> int:
        return self.count(part)

    def __str__(self):
        return ",".join(map(str, self))

    def __repr__(self):
        return f"Partition({tuple(self)})"


def enumerate_partitions(d: int, e: int) -> list[Partition]:
    """All partitions of ``d`` with parts at most ``e``, in reverse-lex order."""

    def gen(rest: int, cap: int) -> Iterator[tuple]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [Partition(t) for t in gen(d, e)]


def _check_weight(p: Partition, q: Partition):
    if sum(p) != sum(q):
        raise UnequalWeight(f"{p} and {q} partition different integers")


def dominance_leq(p: Partition, q: Partition) -> bool:
    """``p <= q`` in dominance order (prefix sums of ``p`` never exceed those of ``q``)."""
    _check_weight(p, q)
    pairs = zip_longest(p, q, fillvalue=0)
    return all(a <= b for a, b in accumulate(pairs, lambda s, x: (s[0] + x[0], s[1] + x[1])))


def conjugate(p: Partition) -> Partition:
    if not p:
        return Partition()
    return Partition(sum(1 for x in p if x > i) for i in range(p[0]))


def bar(p: Partition) -> Partition:
    """Cap every part at 2."""
    return Partition(min(x, 2) for x in p)


def nilpotent_orbit_dim(p: Partition, d: int | None = None) -> int:
    """Dimension of the conjugacy class of nilpotent ``d x d`` matrices of type ``p``.

    The centralizer of such a matrix has dimension ``sum(c**2)`` over the
    parts ``c`` of the conjugate partition.
    """
    if d is None:
        d = sum(p)
    elif sum(p) != d:
        raise UnequalWeight(f"{p} is not a partition of {d}")
    return d * d - sum(c * c for c in conjugate(p))
