"""Sparse integer counters, cosine similarity and top-k summaries."""

from __future__ import annotations

import math
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Iterator, Mapping, NamedTuple

from phishsyntax.errors import EmptyDistribution, ZeroVector


class _Counts:
    """Nonnegative integer counts keyed by string. Zero entries are never stored."""

    __slots__ = ("_counts", "_total")

    def __init__(self, counts: Mapping[str, int] | Iterable[str] | None = None):
        self._counts: dict[str, int] = {}
        self._total = 0
        if counts is None:
            return
        if isinstance(counts, Mapping):
            for key, n in counts.items():
                if n < 0:
                    raise ValueError(f"negative count for {key!r}")
                if n:
                    self.increment(key, n)
        else:
            for key in counts:
                self.increment(key)

    def increment(self, key: str, by: int = 1):
        if by < 1:
            raise ValueError("increment must be a positive count")
        self._counts[key] = self._counts.get(key, 0) + by
        self._total += by
        return self

    @property
    def total(self) -> int:
        return self._total

    @property
    def counts(self) -> dict[str, int]:
        return dict(self._counts)

    def __getitem__(self, key: str) -> int:
        return self._counts.get(key, 0)

    def __contains__(self, key) -> bool:
        return key in self._counts

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def items(self):
        return self._counts.items()

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._counts == other._counts

    def __repr__(self):
        return f"{type(self).__name__}({dict(sorted(self._counts.items()))!r})"

    def scaled(self, factor: int):
        if factor < 1:
            raise ValueError("scale factor must be a positive integer")
        return type(self)({k: n * factor for k, n in self._counts.items()})

    def dumps(self) -> str:
        """Sorted ``key<TAB>count`` lines."""
        return "".join(f"{k}\t{n}\n" for k, n in sorted(self._counts.items()))

    @classmethod
    def loads(cls, text: str):
        out = cls()
        for line in text.splitlines():
            if not line:
                continue
            key, _, n = line.rpartition("\t")
            out.increment(key, int(n))
        return out


class PathVector(_Counts):
    __slots__ = ()


class FreqDist(_Counts):
    __slots__ = ()


class TopEntry(NamedTuple):
    key: str
    count: int
    percentage: float


def increment(counter: _Counts, key: str, by: int = 1) -> _Counts:
    return counter.increment(key, by)


def merge(a: _Counts, b: _Counts) -> _Counts:
    if type(a) is not type(b):
        raise TypeError(f"cannot merge {type(a).__name__} with {type(b).__name__}")
    out = type(a)(a._counts)
    for key, n in b.items():
        out.increment(key, n)
    return out


def cosine(a: _Counts, b: _Counts) -> float:
    """Cosine over the union of keys; absent keys count as zero."""
    if a.total == 0 or b.total == 0:
        raise ZeroVector("cosine similarity is undefined for an empty counter")
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    dot = sum(n * large[k] for k, n in small.items())
    norm_a = sum(n * n for n in a._counts.values())
    norm_b = sum(n * n for n in b._counts.values())
    return min(1.0, dot / math.sqrt(norm_a * norm_b))


def round_half_up(value, places: int) -> Decimal:
    quantum = Decimal(1).scaleb(-places)
    if not isinstance(value, Decimal):
        value = Decimal(repr(value)) if isinstance(value, float) else Decimal(value)
    return value.quantize(quantum, rounding=ROUND_HALF_UP)


def percentage(count: int, total: int, places: int = 2) -> Decimal:
    return round_half_up(Decimal(100 * count) / Decimal(total), places)


def format_similarity(score: float | None) -> str:
    return "n/a" if score is None else str(round_half_up(score, 4))


def format_percentage(count: int, total: int) -> str:
    return f"{percentage(count, total)}%"


def top_k(d: _Counts, k: int) -> list[TopEntry]:
    """Most frequent keys, ties broken by key; percentages rounded half-up to 2 places."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if d.total == 0:
        raise EmptyDistribution("no counts to rank")
    ranked = sorted(d.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    return [TopEntry(key, n, float(percentage(n, d.total))) for key, n in ranked]
