"""Colorations of link components as set partitions, and their integer-partition types."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_COMPONENTS = 12


def canonical_labels(labels: Iterable) -> tuple[int, ...]:
    """Relabel colors 0, 1, ... in order of first appearance (restricted growth string)."""
    seen: dict = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


@dataclass(frozen=True, order=True)
class Coloration:
    """block_of[i] is the color (block index) of component i, canonically labeled."""

    block_of: tuple[int, ...]

    def __post_init__(self):
        if canonical_labels(self.block_of) != tuple(self.block_of):
            object.__setattr__(self, "block_of", canonical_labels(self.block_of))

    @classmethod
    def from_labels(cls, labels: Iterable) -> Coloration:
        return cls(canonical_labels(labels))

    @classmethod
    def parse(cls, text: str) -> Coloration:
        """``"0,0,1"`` -> coloration of three components with two colors."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty coloration")
        try:
            return cls.from_labels(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"bad coloration {text!r}: expected comma list of integers") from None

    @classmethod
    def monochrome(cls, n: int) -> Coloration:
        return cls((0,) * n)

    @classmethod
    def discrete(cls, n: int) -> Coloration:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def c(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.c)]
        for comp, b in enumerate(self.block_of):
            out[b].append(comp)
        return out

    def __str__(self) -> str:
        return ",".join(map(str, self.block_of))


@dataclass(frozen=True, order=True)
class PartitionType:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> PartitionType:
        text = text.strip().strip("()")
        try:
            return cls(tuple(int(p) for p in text.split(",") if p.strip()))
        except ValueError:
            raise ValueError(f"bad partition type {text!r}") from None

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def c(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def _set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    # restricted growth strings in lexicographic order
    if n == 0:
        yield ()
        return
    rgs = [0] * n
    maxes = [0] * n

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(rgs)
            return
        for v in range(maxes[i - 1] + 2):
            rgs[i] = v
            maxes[i] = max(maxes[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def all_set_partitions(n: int) -> list[Coloration]:
    """Every set partition of n components, as canonical colorations (Bell(n) of them)."""
    if not 1 <= n <= MAX_COMPONENTS:
        raise ValueError(f"component count {n} outside 1..{MAX_COMPONENTS}")
    return [Coloration(r) for r in _set_partitions(n)]


def type_of(col: Coloration) -> PartitionType:
    return PartitionType(tuple(Counter(col.block_of).values()))


def partitions_of_type(n: int, p: PartitionType) -> list[Coloration]:
    if p.n != n:
        raise ValueError(f"type {p} does not partition {n} components")
    return [col for col in all_set_partitions(n) if type_of(col) == p]


def integer_partitions(n: int) -> list[PartitionType]:
    """Integer partitions of n, largest parts first."""
    out = []

    def rec(rest: int, cap: int, acc: list[int]) -> None:
        if rest == 0:
            out.append(PartitionType(tuple(acc)))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def merge_colors(col: Coloration, a: int, b: int) -> Coloration:
    if a == b:
        raise ValueError("cannot merge a color with itself")
    if not (0 <= a < col.c and 0 <= b < col.c):
        raise ValueError(f"blocks {a}, {b} out of range for {col.c} colors")
    return Coloration.from_labels(a if blk == b else blk for blk in col.block_of)


def restrict_after_smooth(
    col: Coloration,
    merged: tuple[int, int] | None = None,
    split: int | None = None,
    order: Sequence[int] | None = None,
) -> Coloration:
    """Carry a coloration across a smoothing.

    ``merged=(i, j)``: components i and j became one (which takes index min(i, j));
    ``split=i``: component i became two, both colored like i (the new one is appended).
    ``order`` optionally permutes the resulting components into the new diagram's order.
    """
    labels = list(col.block_of)
    if merged is not None:
        i, j = merged
        if i == j:
            raise ValueError("merge needs two distinct components")
        if labels[i] != labels[j]:
            raise ValueError("merged components must already share a color")
        del labels[max(i, j)]
    elif split is not None:
        labels.append(labels[split])
    else:
        raise ValueError("either merged or split must be given")
    if order is not None:
        labels = [labels[k] for k in order]
    return Coloration.from_labels(labels)


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1] if n else 1
