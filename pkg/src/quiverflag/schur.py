"""Cohomology of Schur-power products of tautological bundles, via the Grassmann-bundle tower.

A bundle term assigns a dominant weight of length ``r_i`` to every vertex
``i >= 1``; it stands for the tensor product of the Schur powers
``S^{lam_i} W_i``.  Sections are computed by pushing terms down the tower one
vertex at a time, from ``rho`` to ``1``:

* a weight with a negative entry (inside the vanishing range) pushes forward to zero;
* a partition ``lam`` at vertex ``i`` becomes ``S^lam F_i`` with
  ``F_i`` the sum of ``W_t`` over arrows ``t -> i``; this is split by the
  sum rule and merged with the weights already sitting at each tail by the
  tensor rule.

Weights below ``-(s_i - r_i)`` are refused (``OutOfBottRange``): there the
higher direct images need not vanish and a pure H^0 count would be wrong.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import NotStrict, OutOfBottRange
from .partitions import (
    dual_weight,
    enumerate_young,
    gl_dimension,
    pad,
    sum_decompose,
    tensor_decompose,
    trim,
)
from .quiver import QuiverFlagSpec

Weight = tuple[int, ...]


@dataclass(frozen=True, order=True)
class BundleTerm:
    """``weights[i - 1]`` is the weight at vertex ``i``."""

    weights: tuple[Weight, ...]

    def at(self, i: int) -> Weight:
        return self.weights[i - 1]

    def top(self) -> int:
        """Largest vertex carrying a nonzero weight (0 if none)."""
        for i in range(len(self.weights), 0, -1):
            if any(self.weights[i - 1]):
                return i
        return 0

    def to_json(self) -> list[list[int]]:
        return [list(w) for w in self.weights]


BundleSymbol = Counter  # Counter[BundleTerm] with positive integer multiplicities


def make_term(spec: QuiverFlagSpec, weights: Mapping[int, Sequence[int]] | None = None) -> BundleTerm:
    weights = weights or {}
    out = []
    for i in range(1, spec.rho + 1):
        w = tuple(weights.get(i, ()))
        out.append(pad(w, spec.dims[i]) if len(w) <= spec.dims[i] else w)
        if len(out[-1]) != spec.dims[i]:
            raise ValueError(f"weight at vertex {i} must have length {spec.dims[i]}")
    return BundleTerm(tuple(out))


def trivial_term(spec: QuiverFlagSpec) -> BundleTerm:
    return make_term(spec)


def unit_term(spec: QuiverFlagSpec, i: int) -> BundleTerm:
    """The tautological bundle W_i itself (trivial term for i = 0)."""
    if i == 0:
        return trivial_term(spec)
    return make_term(spec, {i: (1,)})


def det_term(spec: QuiverFlagSpec, i: int, power: int = 1) -> BundleTerm:
    return make_term(spec, {i: (power,) * spec.dims[i]})


def line_term(spec: QuiverFlagSpec, theta: Sequence[int]) -> BundleTerm:
    """det(W_1)^theta_1 (x) ... (x) det(W_rho)^theta_rho."""
    return make_term(spec, {i: (theta[i - 1],) * spec.dims[i] for i in range(1, spec.rho + 1)})


def bott_bound(spec: QuiverFlagSpec, i: int) -> int:
    return -(spec.s[i] - spec.dims[i])


def vanishing_certificate(spec: QuiverFlagSpec, term: BundleTerm) -> bool:
    """True when every entry at vertex i is at least -(s_i - r_i).

    Then all higher cohomology of the term vanishes.
    """
    return all(
        min(term.at(i), default=0) >= bott_bound(spec, i) for i in range(1, spec.rho + 1)
    )


def _check_range(spec: QuiverFlagSpec, i: int, w: Weight) -> None:
    low = min(w, default=0)
    if low < bott_bound(spec, i):
        raise OutOfBottRange(i, low, bott_bound(spec, i))


# ---------------------------------------------------------------------------
# S^lam of a direct sum of tautological bundles


@lru_cache(maxsize=None)
def _schur_of_copies(lam: Weight, t: int, rank: int, copies: int) -> tuple[tuple[Weight, int], ...]:
    """S^lam(W^{+copies}) for W of the given rank, as weights at W with multiplicities."""
    if rank == 1:
        # S^lam(L (x) k^n) = L^{|lam|} (x) S^lam(k^n)
        d = gl_dimension(lam, copies) if len(lam) <= copies else 0
        return (((sum(lam),), d),) if d else ()
    if copies == 1:
        return ((pad(lam, rank), 1),) if len(lam) <= rank else ()
    acc: Counter = Counter()
    for (alpha, beta), c in sum_decompose(lam, rank, rank * (copies - 1)).items():
        for w_rest, c_rest in _schur_of_copies(trim(beta), t, rank, copies - 1):
            for nu, c_nu in tensor_decompose(alpha, w_rest, rank).items():
                acc[nu] += c * c_rest * c_nu
    return tuple(sorted(acc.items()))


def _schur_of_sum(lam: Weight, groups: tuple[tuple[int, int, int], ...]):
    """S^lam of the sum of ``copies`` copies of W_t for each ``(t, rank_t, copies)``.

    Yields ``(assignment, multiplicity)`` where assignment is a tuple of
    ``(t, weight)`` for each group.
    """
    (t, rank, copies), rest = groups[0], groups[1:]
    if not rest:
        for w, c in _schur_of_copies(lam, t, rank, copies):
            yield ((t, w),), c
        return
    rest_rank = sum(r * n for _, r, n in rest)
    for (alpha, beta), c in sum_decompose(lam, rank * copies, rest_rank).items():
        head = _schur_of_copies(trim(alpha), t, rank, copies)
        if not head:
            continue
        tails = list(_schur_of_sum(trim(beta), rest))
        for w, c_head in head:
            for assignment, c_tail in tails:
                yield ((t, w),) + assignment, c * c_head * c_tail


def _groups(spec: QuiverFlagSpec, i: int) -> tuple[tuple[int, int, int], ...]:
    counts: dict[int, int] = {}
    for t in spec.tails_into(i):
        counts[t] = counts.get(t, 0) + 1
    return tuple((t, spec.dims[t], n) for t, n in sorted(counts.items()))


def _push_term(spec: QuiverFlagSpec, term: BundleTerm, i: int) -> Counter:
    """Direct image of one term under the projection forgetting vertex i."""
    lam = term.at(i)
    _check_range(spec, i, lam)
    out: Counter = Counter()
    if min(lam, default=0) < 0:
        return out
    if not any(lam):
        out[term] += 1
        return out
    base = list(term.weights)
    base[i - 1] = (0,) * spec.dims[i]
    merged: dict[tuple, Counter] = {}
    for assignment, c in _schur_of_sum(trim(lam), _groups(spec, i)):
        # combine the new weights with the ones already at each tail vertex
        partial: Counter = Counter({tuple(base): c})
        for t, w in assignment:
            if t == 0:
                continue
            nxt: Counter = Counter()
            for weights, mult in partial.items():
                cache_key = (weights[t - 1], w, spec.dims[t])
                prod = merged.get(cache_key)
                if prod is None:
                    prod = tensor_decompose(weights[t - 1], w, spec.dims[t])
                    merged[cache_key] = prod
                for nu, c_nu in prod.items():
                    new = list(weights)
                    new[t - 1] = nu
                    nxt[tuple(new)] += mult * c_nu
            partial = nxt
        for weights, mult in partial.items():
            out[BundleTerm(weights)] += mult
    return out


def pushforward_step(spec: QuiverFlagSpec, symbol: Mapping[BundleTerm, int] | BundleTerm, i: int) -> Counter:
    """Push every term of ``symbol`` from the level-i Grassmann bundle down to level i - 1.

    Every term must already be trivial at vertices above ``i``.
    """
    if isinstance(symbol, BundleTerm):
        symbol = {symbol: 1}
    out: Counter = Counter()
    for term, mult in symbol.items():
        if term.top() > i:
            raise ValueError(f"term {term} still has weights above vertex {i}")
        for new, c in _push_term(spec, term, i).items():
            out[new] += mult * c
    return out


@lru_cache(maxsize=None)
def _h0(spec: QuiverFlagSpec, term: BundleTerm) -> int:
    i = term.top()
    if i == 0:
        return 1
    return sum(c * _h0(spec, new) for new, c in _push_term(spec, term, i).items())


def h0_dim(spec: QuiverFlagSpec, term: BundleTerm | Mapping[BundleTerm, int]) -> int:
    """dim H^0 of a term (or a symbol); higher cohomology vanishes when this returns.

    Raises ``OutOfBottRange`` if some weight met during the descent is below the range.
    """
    if isinstance(term, BundleTerm):
        for i in range(1, spec.rho + 1):
            _check_range(spec, i, term.at(i))
        return _h0(spec, term)
    return sum(mult * h0_dim(spec, t) for t, mult in term.items())


def hom_symbol(spec: QuiverFlagSpec, a: BundleTerm, b: BundleTerm) -> Counter:
    """The sheaf Hom(a, b) = dual(a) (x) b, decomposed vertex by vertex."""
    acc: Counter = Counter({(): 1})
    for i in range(1, spec.rho + 1):
        prod = tensor_decompose(dual_weight(a.at(i)), b.at(i), spec.dims[i])
        nxt: Counter = Counter()
        for prefix, c in acc.items():
            for nu, c_nu in prod.items():
                nxt[prefix + (nu,)] += c * c_nu
        acc = nxt
    return Counter({BundleTerm(w): c for w, c in acc.items()})


def hom_dim(spec: QuiverFlagSpec, a: BundleTerm, b: BundleTerm) -> int:
    return h0_dim(spec, hom_symbol(spec, a, b))


# ---------------------------------------------------------------------------
# tilting bundle


def _require_strict(spec: QuiverFlagSpec) -> None:
    if not spec.is_strict:
        bad = [i for i in range(1, spec.rho + 1) if spec.dims[i] >= spec.s[i]]
        raise NotStrict(f"r_i >= s_i at vertices {bad}; simplify the quiver first")


def tilting_summands(spec: QuiverFlagSpec) -> list[BundleTerm]:
    """Schur products with lam_i in the (s_i - r_i) x r_i box at every vertex."""
    _require_strict(spec)
    boxes = [enumerate_young(spec.s[i] - spec.dims[i], spec.dims[i]) for i in range(1, spec.rho + 1)]
    return [BundleTerm(tuple(ws)) for ws in product(*boxes)]


def tilting_rank(spec: QuiverFlagSpec) -> int:
    total = 0
    for term in tilting_summands(spec):
        r = 1
        for i in range(1, spec.rho + 1):
            r *= gl_dimension(term.at(i), spec.dims[i])
        total += r
    return total


@dataclass(frozen=True)
class ExceptionalityCertificate:
    pairs_checked: int
    all_in_range: bool
    failures: tuple[tuple[BundleTerm, BundleTerm], ...] = ()


def strong_exceptionality_check(spec: QuiverFlagSpec) -> ExceptionalityCertificate:
    """Check that every Hom summand between tilting summands lies in the vanishing range.

    Uses the full tensor decomposition of dual(a) (x) b, not the componentwise difference.
    """
    summands = tilting_summands(spec)
    failures = []
    for a in summands:
        for b in summands:
            if not all(vanishing_certificate(spec, t) for t in hom_symbol(spec, a, b)):
                failures.append((a, b))
    return ExceptionalityCertificate(len(summands) ** 2, not failures, tuple(failures))


def _hom_row(args):
    spec, a, summands = args
    return [hom_dim(spec, a, b) for b in summands]


def hom_matrix(spec: QuiverFlagSpec, jobs: int = 1) -> list[list[int]]:
    """dim Hom(T_a, T_b) for every ordered pair of tilting summands."""
    summands = tilting_summands(spec)
    tasks = [(spec, a, summands) for a in summands]
    if jobs > 1 and len(summands) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_hom_row, tasks))
    return [_hom_row(task) for task in tasks]


def endomorphism_dim(spec: QuiverFlagSpec, jobs: int = 1) -> int:
    return sum(sum(row) for row in hom_matrix(spec, jobs))


def summands_from(spec: QuiverFlagSpec, weights: Iterable[Mapping[int, Sequence[int]]]) -> list[BundleTerm]:
    return [make_term(spec, w) for w in weights]
