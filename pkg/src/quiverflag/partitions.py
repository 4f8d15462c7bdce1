"""Partitions, dominant weights and Littlewood-Richardson calculus.

Weights are plain tuples of ints.  Functions that take partitions accept
trailing zeros; the ``_trim`` helpers strip them so memoised calls share keys.
Functions that produce weights for a fixed rank return tuples of that length.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb
from typing import Sequence

Weight = tuple[int, ...]


def trim(lam: Sequence[int]) -> Weight:
    lam = tuple(lam)
    end = len(lam)
    while end and lam[end - 1] == 0:
        end -= 1
    return lam[:end]


def pad(lam: Sequence[int], length: int) -> Weight:
    lam = tuple(lam)
    if len(lam) > length:
        if any(lam[length:]):
            raise ValueError(f"{lam} has more than {length} nonzero rows")
        return lam[:length]
    return lam + (0,) * (length - len(lam))


def is_dominant(lam: Sequence[int]) -> bool:
    return all(lam[k] >= lam[k + 1] for k in range(len(lam) - 1))


def is_partition(lam: Sequence[int]) -> bool:
    return is_dominant(lam) and (not lam or lam[-1] >= 0)


def _require_partition(lam: Sequence[int]) -> Weight:
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    return trim(lam)


def enumerate_young(k: int, r: int) -> list[Weight]:
    """Partitions with at most ``k`` columns and ``r`` rows, padded to length ``r``.

    Sorted lexicographically; there are ``C(k + r, r)`` of them.
    """
    out: list[Weight] = []

    def rec(prefix: list[int], bound: int):
        if len(prefix) == r:
            out.append(tuple(prefix))
            return
        for part in range(bound + 1):
            prefix.append(part)
            rec(prefix, part)
            prefix.pop()

    rec([], k)
    out.sort()
    return out


@lru_cache(maxsize=None)
def _lr(lam: Weight, mu: Weight, nu: Weight) -> int:
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if len(lam) > len(nu) or any(l > n for l, n in zip(lam, nu)):
        return 0
    if len(mu) > len(nu) or any(m > n for m, n in zip(mu, nu)):
        return 0
    if not mu:
        return 1

    rows = len(nu)
    inner = lam + (0,) * (rows - len(lam))
    # boxes of nu/lam in reading order: rows top to bottom, each right to left
    boxes = [(row, col) for row in range(rows) for col in range(nu[row] - 1, inner[row] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)
    letters = len(mu)

    def rec(pos: int) -> int:
        if pos == len(boxes):
            return 1
        row, col = boxes[pos]
        hi = letters
        right = filling.get((row, col + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((row - 1, col))
        if above is not None:
            lo = above + 1
        total = 0
        for x in range(lo, hi + 1):
            if counts[x] >= mu[x - 1]:
                continue
            if x > 1 and counts[x] >= counts[x - 1]:
                continue
            counts[x] += 1
            filling[(row, col)] = x
            total += rec(pos + 1)
            del filling[(row, col)]
            counts[x] -= 1
        return total

    return rec(0)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Littlewood-Richardson coefficient c^nu_{lam, mu}.

    Counts semistandard fillings of nu/lam with content mu whose reverse
    row reading word is a lattice word.
    """
    return _lr(_require_partition(lam), _require_partition(mu), _require_partition(nu))


def _containing_partitions(lam: Weight, mu: Weight, max_len: int):
    """Partitions nu of |lam|+|mu| containing lam and mu, of length <= max_len."""
    size = sum(lam) + sum(mu)
    first = (lam[0] if lam else 0) + (mu[0] if mu else 0)
    length = min(max_len, len(lam) + len(mu))

    def lower(k: int) -> int:
        a = lam[k] if k < len(lam) else 0
        b = mu[k] if k < len(mu) else 0
        return max(a, b)

    out: list[Weight] = []

    def rec(prefix: list[int], bound: int, left: int):
        k = len(prefix)
        if left == 0:
            if all(lower(j) == 0 for j in range(k, max(len(lam), len(mu)))):
                out.append(tuple(prefix))
            return
        if k == length:
            return
        if left > bound * (length - k):
            return
        for part in range(min(bound, left), lower(k) - 1, -1):
            if part == 0:
                break
            prefix.append(part)
            rec(prefix, part, left - part)
            prefix.pop()

    rec([], first, size)
    return out


@lru_cache(maxsize=None)
def _tensor_partitions(lam: Weight, mu: Weight, rank: int) -> tuple[tuple[Weight, int], ...]:
    out = []
    for nu in _containing_partitions(lam, mu, rank):
        c = _lr(lam, mu, nu)
        if c:
            out.append((nu, c))
    return tuple(out)


def normalize(lam: Sequence[int]) -> tuple[Weight, int]:
    """Smallest ``m >= 0`` with ``lam + m`` a partition, and that partition."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    m = max(0, -lam[-1]) if lam else 0
    return tuple(x + m for x in lam), m


def dual_weight(lam: Sequence[int]) -> Weight:
    """Highest weight of the dual representation."""
    return tuple(-x for x in reversed(tuple(lam)))


def tensor_decompose(lam: Sequence[int], mu: Sequence[int], rank: int) -> Counter:
    """Decompose S^lam E (x) S^mu E for E of rank ``rank``.

    Dominant weights with negative entries are allowed (determinant twists).
    Summands with more than ``rank`` rows vanish and are dropped.  Keys are
    weights of length ``rank``.
    """
    lam_p, m1 = normalize(pad(lam, rank))
    mu_p, m2 = normalize(pad(mu, rank))
    shift = m1 + m2
    out: Counter = Counter()
    for nu, c in _tensor_partitions(trim(lam_p), trim(mu_p), rank):
        out[tuple(x - shift for x in pad(nu, rank))] += c
    return out


@lru_cache(maxsize=None)
def _sub_partitions(nu: Weight, max_len: int) -> tuple[Weight, ...]:
    out: list[Weight] = []

    def rec(prefix: list[int], k: int):
        if k == min(len(nu), max_len):
            out.append(trim(prefix))
            return
        bound = nu[k] if not prefix else min(nu[k], prefix[-1])
        for part in range(bound + 1):
            prefix.append(part)
            rec(prefix, k + 1)
            prefix.pop()

    rec([], 0)
    return tuple(out)


@lru_cache(maxsize=None)
def _sum_decompose(nu: Weight, r1: int, r2: int) -> tuple[tuple[Weight, Weight, int], ...]:
    out = []
    size = sum(nu)
    seconds: dict[int, list[Weight]] = {}
    for mu in _sub_partitions(nu, r2):
        seconds.setdefault(sum(mu), []).append(mu)
    for lam in _sub_partitions(nu, r1):
        for mu in seconds.get(size - sum(lam), ()):
            c = _lr(lam, mu, nu)
            if c:
                out.append((lam, mu, c))
    return tuple(out)


def sum_decompose(nu: Sequence[int], r1: int, r2: int) -> Counter:
    """Decompose S^nu(E + F) with rank E = r1, rank F = r2.

    Keys are ``(lam, mu)`` padded to lengths ``r1`` and ``r2``.
    """
    nu = _require_partition(nu)
    out: Counter = Counter()
    for lam, mu, c in _sum_decompose(nu, r1, r2):
        out[(pad(lam, r1), pad(mu, r2))] += c
    return out


def gl_dimension(lam: Sequence[int], n: int) -> int:
    """Dimension of the irreducible GL(n)-module of highest weight ``lam``.

    Hook content formula; determinant twists are one-dimensional.
    """
    lam = tuple(lam)
    if lam and min(lam) >= 0:
        part = trim(lam)
        if len(part) > n:
            return 0
    else:
        if len(lam) > n:
            raise ValueError(f"weight {lam} is longer than n = {n}")
        part = trim(normalize(pad(lam, n))[0])
    num = 1
    den = 1
    conj = conjugate(part)
    for row, length in enumerate(part):
        for col in range(length):
            num *= n + col - row
            den *= (length - col) + (conj[col] - row) - 1
    return num // den


def conjugate(lam: Sequence[int]) -> Weight:
    lam = trim(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0]))


def young_count(k: int, r: int) -> int:
    return comb(k + r, r)
