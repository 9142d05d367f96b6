"""Brute-force oracle for unimodal sequences.

Nothing here touches the series engine: sequences are listed explicitly and
counts come from a knapsack-style dynamic programme over the peak value, so the
tables can be used to test the generating functions independently.

Four kinds are supported::

    u    unimodal                 a_1 <= ... <= a_r <= c >= b_1 >= ... >= b_s
    u*   strongly unimodal        all inequalities strict
    ou   odd unimodal             as u, every entry odd
    ou*  odd strongly unimodal    as u*, every entry odd

The peak is marked, so ``(1, [1])`` and ``([1], 1)`` are different sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

KINDS = {"u": (False, False), "u*": (False, True), "ou": (True, False), "ou*": (True, True)}


@dataclass(frozen=True)
class UnimodalSequence:
    left: tuple[int, ...]
    peak: int
    right: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        parts = self.left + (self.peak,) + self.right
        if any(p < 1 for p in parts):
            raise ValueError(f"entries must be positive: {parts}")
        if not self._shape_ok(strict=False):
            raise ValueError(f"not unimodal around the marked peak: {self}")

    def _shape_ok(self, strict: bool) -> bool:
        up = self.left + (self.peak,)
        down = (self.peak,) + self.right
        if strict:
            return all(a < b for a, b in zip(up, up[1:])) and all(a > b for a, b in zip(down, down[1:]))
        return all(a <= b for a, b in zip(up, up[1:])) and all(a >= b for a, b in zip(down, down[1:]))

    @property
    def weight(self) -> int:
        return sum(self.left) + self.peak + sum(self.right)

    @property
    def rank(self) -> int:
        return len(self.left) - len(self.right)

    @property
    def is_odd(self) -> bool:
        return all(p % 2 for p in self.left + (self.peak,) + self.right)

    @property
    def is_strict(self) -> bool:
        return self._shape_ok(strict=True)

    def is_kind(self, kind: str) -> bool:
        odd, strict = KINDS[kind]
        return (self.is_odd or not odd) and (self.is_strict or not strict)

    def __str__(self) -> str:
        items = [str(a) for a in self.left] + [f"[{self.peak}]"] + [str(b) for b in self.right]
        return "(" + ", ".join(items) + ")"


# -- explicit listing -------------------------------------------------------------


def _partitions(n: int, largest: int, parts: list[int], distinct: bool) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into the allowed ``parts`` that are ``<= largest``, in decreasing order."""
    if n == 0:
        yield ()
        return
    for p in parts:
        if p > largest or p > n:
            continue
        nxt = p - 1 if distinct else p
        for rest in _partitions(n - p, nxt, parts, distinct):
            yield (p,) + rest


def enumerate_sequences(n: int, odd: bool = False, strict: bool = False) -> list[UnimodalSequence]:
    """Every (odd) (strongly) unimodal sequence of weight ``n``."""
    if n < 1:
        return []
    parts = [p for p in range(n, 0, -1) if p % 2 or not odd]
    out = []
    for c in parts:
        side_max = c - 1 if strict else c
        rest = n - c
        for k in range(rest + 1):
            lefts = list(_partitions(k, side_max, parts, strict))
            if not lefts:
                continue
            for right in _partitions(rest - k, side_max, parts, strict):
                for left in lefts:
                    out.append(UnimodalSequence(tuple(reversed(left)), c, right))
    return out


def enumerate_kind(kind: str, n: int) -> list[UnimodalSequence]:
    odd, strict = KINDS[kind]
    return enumerate_sequences(n, odd=odd, strict=strict)


# -- DP tables ----------------------------------------------------------------------


@dataclass(frozen=True)
class CountTable:
    kind: str
    max_weight: int
    counts: tuple[int, ...]
    rank_counts: tuple[dict[int, int], ...] | None = None

    def __post_init__(self):
        if self.rank_counts is not None:
            for n, (c, row) in enumerate(zip(self.counts, self.rank_counts)):
                if sum(row.values()) != c:
                    raise ValueError(f"rank refinement does not add up at n={n}")

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def rank(self, m: int, n: int) -> int:
        if self.rank_counts is None:
            raise ValueError("table was built without ranks")
        return self.rank_counts[n].get(m, 0)


def count_table(kind: str, max_weight: int, with_ranks: bool = False) -> CountTable:
    """Counts for weights ``0..max_weight`` by a DP over the peak value.

    For each admissible peak ``c`` the two sides are partitions into allowed
    parts ``<= c`` (weak) or distinct allowed parts ``< c`` (strict); the
    partition table, indexed by weight and number of parts, is extended one
    part size at a time as ``c`` grows.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    if max_weight < 0:
        raise ValueError("max_weight must be nonnegative")
    odd, strict = KINDS[kind]
    N = max_weight
    # table[w][k]: partitions of w into k parts from the sizes added so far
    table = [[0] * (N + 1) for _ in range(N + 1)]
    table[0][0] = 1
    counts = [0] * (N + 1)
    ranks: list[dict[int, int]] = [{} for _ in range(N + 1)]

    def add_part(p: int) -> None:
        if strict:
            for w in range(N, p - 1, -1):
                for k in range(N, 0, -1):
                    table[w][k] += table[w - p][k - 1]
        else:
            for w in range(p, N + 1):
                for k in range(1, N + 1):
                    table[w][k] += table[w - p][k - 1]

    for c in range(1, N + 1):
        allowed = c % 2 == 1 or not odd
        if allowed and not strict:
            add_part(c)
        if allowed:
            rest = N - c
            side = [[(k, v) for k, v in enumerate(table[w]) if v] for w in range(rest + 1)]
            for w1 in range(rest + 1):
                for w2 in range(rest + 1 - w1):
                    n = c + w1 + w2
                    for k1, v1 in side[w1]:
                        for k2, v2 in side[w2]:
                            counts[n] += v1 * v2
                            if with_ranks:
                                m = k1 - k2
                                ranks[n][m] = ranks[n].get(m, 0) + v1 * v2
        if allowed and strict:
            add_part(c)
    return CountTable(kind, N, tuple(counts), tuple(ranks) if with_ranks else None)


# -- the two injections ---------------------------------------------------------------


def inject_weak(s: UnimodalSequence) -> UnimodalSequence:
    """Prepend a part 1; odd unimodal of weight n -> weight n + 1."""
    if not s.is_kind("ou"):
        raise ValueError(f"{s} is not odd unimodal")
    return UnimodalSequence((1,) + s.left, s.peak, s.right)


def inject_strict(s: UnimodalSequence) -> UnimodalSequence:
    """Odd strongly unimodal of weight n >= 3 -> weight n + 1.

    Prepend 1 unless the sequence already starts with 1; in that case drop it
    and raise the peak by 2.
    """
    if not s.is_kind("ou*"):
        raise ValueError(f"{s} is not odd strongly unimodal")
    if s.weight < 3:
        raise ValueError("the strict injection needs weight >= 3")
    if s.left and s.left[0] == 1:
        out = UnimodalSequence(s.left[1:], s.peak + 2, s.right)
    else:
        out = UnimodalSequence((1,) + s.left, s.peak, s.right)
    if not out.is_kind("ou*") or out.weight != s.weight + 1:
        raise AssertionError(f"strict injection left the class: {s} -> {out}")
    return out


def injectivity_check(fn: Callable[[UnimodalSequence], UnimodalSequence],
                      domain: Iterable[UnimodalSequence]) -> list[tuple[UnimodalSequence, UnimodalSequence]]:
    """Pairs of distinct inputs with the same image (empty list if injective)."""
    seen: dict[UnimodalSequence, UnimodalSequence] = {}
    clashes = []
    for s in domain:
        t = fn(s)
        if t in seen:
            clashes.append((seen[t], s))
        else:
            seen[t] = s
    return clashes
