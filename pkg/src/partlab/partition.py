"""Canonical integer partitions stored as (part, multiplicity) pairs.

A partition is an immutable multiset of positive integers.  The canonical
form keeps one pair per distinct part, parts strictly decreasing, every
multiplicity >= 1, and caches the weight (sum of part * multiplicity).
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .errors import InvalidPartitionError

Pair = tuple[int, int]

_ITEM_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


class Partition:
    """Immutable multiset of positive parts in canonical decreasing order."""

    __slots__ = ("pairs", "weight")

    pairs: tuple[Pair, ...]
    weight: int

    def __init__(self, pairs: Iterable[Pair] = ()):
        merged: dict[int, int] = {}
        for item in pairs:
            try:
                part, mult = item
            except (TypeError, ValueError):
                raise InvalidPartitionError(f"expected (part, multiplicity) pair, got {item!r}") from None
            if not isinstance(part, int) or isinstance(part, bool) or part <= 0:
                raise InvalidPartitionError(f"part must be a positive integer, got {part!r}")
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 0:
                raise InvalidPartitionError(f"multiplicity must be a nonnegative integer, got {mult!r}")
            if mult:
                merged[part] = merged.get(part, 0) + mult
        canon = tuple(sorted(merged.items(), reverse=True))
        self.pairs = canon
        self.weight = sum(p * m for p, m in canon)

    @classmethod
    def _raw(cls, pairs: tuple[Pair, ...], weight: int) -> "Partition":
        """Wrap already-canonical pairs without validation (internal fast path)."""
        self = object.__new__(cls)
        self.pairs = pairs
        self.weight = weight
        return self

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from a plain list of parts, e.g. [4, 2, 2]."""
        return cls((p, 1) for p in parts)

    def multiplicity(self, part: int) -> int:
        """Multiplicity of ``part`` in the multiset, 0 if absent."""
        if not isinstance(part, int) or part < 1:
            raise InvalidPartitionError(f"part must be a positive integer, got {part!r}")
        for p, m in self.pairs:
            if p == part:
                return m
            if p < part:
                break
        return 0

    def union(self, other: "Partition") -> "Partition":
        """Multiset union: multiplicities add, weight adds."""
        merged = dict(self.pairs)
        for p, m in other.pairs:
            merged[p] = merged.get(p, 0) + m
        canon = tuple(sorted(merged.items(), reverse=True))
        return Partition._raw(canon, self.weight + other.weight)

    def is_empty(self) -> bool:
        return not self.pairs

    def num_parts(self) -> int:
        """Number of parts counted with multiplicity."""
        return sum(m for _, m in self.pairs)

    def parts(self) -> Iterator[int]:
        """Iterate over parts with multiplicity, largest first."""
        for p, m in self.pairs:
            for _ in range(m):
                yield p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)!r})"


def make_partition(pairs: Iterable[Pair]) -> Partition:
    """Canonicalize arbitrary (part, multiplicity) input.

    Duplicate parts merge by summing multiplicities, zero multiplicities are
    dropped, parts sort in decreasing order.  Raises InvalidPartitionError for
    parts <= 0 or negative multiplicities.
    """
    return Partition(pairs)


def multiset_union(a: Partition, b: Partition) -> Partition:
    return a.union(b)


def multiplicity(p: Partition, part: int) -> int:
    return p.multiplicity(part)


def format_partition(p: Partition) -> str:
    """Render the text form, e.g. ``13^10,7^30,1`` (``-`` for the empty one)."""
    if not p.pairs:
        return "-"
    return ",".join(f"{part}^{mult}" if mult > 1 else str(part) for part, mult in p.pairs)


def parse_partition(text: str) -> Partition:
    """Parse the text grammar: comma-separated ``P`` or ``P^M`` items.

    Input order is free; the result is canonical.  ``-`` (or an empty string)
    denotes the empty partition.
    """
    body = text.strip()
    if body in ("", "-"):
        return Partition()
    pairs = []
    for item in body.split(","):
        item = item.strip()
        m = _ITEM_RE.match(item)
        if not m:
            raise InvalidPartitionError(f"bad partition item {item!r} in {text!r}")
        part = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        pairs.append((part, mult))
    return Partition(pairs)
