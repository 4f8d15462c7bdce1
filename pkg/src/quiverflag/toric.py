"""Graded Cox data, monomial sections and quivers of sections for the toric case."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Mapping, Sequence

from .errors import NotPointed, NotStrict, NotToric, NotWeaklyExceptional
from .quiver import QuiverFlagSpec, make_spec

Degree = tuple[int, ...]
Exponent = tuple[int, ...]


def _dot(w: Sequence[int], d: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(w, d))


def positive_functional(degrees: Sequence[Degree]) -> tuple[int, ...] | None:
    """An integer vector pairing strictly positively with every degree, or None.

    Such a vector exists exactly when the grading is pointed.  Found by linear
    programming, then rounded to rationals and checked exactly.
    """
    if not degrees:
        return ()
    k = len(degrees[0])
    if any(not any(d) for d in degrees):
        return None
    if k == 0:
        return None
    from scipy.optimize import linprog

    res = linprog(
        c=[0.0] * k,
        A_ub=[[-float(x) for x in d] for d in degrees],
        b_ub=[-1.0] * len(degrees),
        bounds=[(None, None)] * k,
        method="highs",
    )
    if res.status != 0:
        return None
    for den in (1, 10, 100, 10**4, 10**6, 10**9):
        fr = [Fraction(x).limit_denominator(den) for x in res.x]
        scale = lcm(*(f.denominator for f in fr))
        w = tuple(int(f * scale) for f in fr)
        if all(_dot(w, d) > 0 for d in degrees):
            return w
    return None


@dataclass(frozen=True)
class GradedCoxData:
    """Polynomial ring with variables graded by a free abelian group Z^k.

    ``functional`` certifies pointedness: it pairs positively with every degree.
    """

    names: tuple[str, ...]
    degrees: tuple[Degree, ...]
    functional: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(tuple(int(x) for x in d) for d in self.degrees))
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree per variable")
        if len({len(d) for d in self.degrees}) > 1:
            raise ValueError("degrees must share one rank")
        w = tuple(self.functional)
        if not w or not all(_dot(w, d) > 0 for d in self.degrees):
            w = positive_functional(self.degrees)
            if w is None:
                raise NotPointed("the degrees span a cone containing a line")
        object.__setattr__(self, "functional", w)

    @property
    def rank(self) -> int:
        return len(self.degrees[0]) if self.degrees else 0

    def degree_of(self, u: Sequence[int]) -> Degree:
        out = [0] * self.rank
        for e, d in zip(u, self.degrees):
            if e:
                for k, x in enumerate(d):
                    out[k] += e * x
        return tuple(out)

    def monomial_str(self, u: Sequence[int]) -> str:
        parts = []
        for name, e in zip(self.names, u):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        return {"vars": list(self.names), "degrees": [list(d) for d in self.degrees]}


def cox_data_from_json(doc: Mapping) -> GradedCoxData:
    try:
        names = [str(x) for x in doc["vars"]]
        degrees = [tuple(int(x) for x in d) for d in doc["degrees"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed Cox document: {exc}") from exc
    return GradedCoxData(tuple(names), tuple(degrees))


def load_cox_data(path) -> GradedCoxData:
    with open(path, encoding="utf-8") as fh:
        return cox_data_from_json(json.load(fh))


def require_toric(spec: QuiverFlagSpec) -> None:
    if not spec.is_toric:
        raise NotToric(f"dimension vector {spec.dims} is not all ones")


def arrow_degrees(spec: QuiverFlagSpec) -> tuple[Degree, ...]:
    """Degree e_head - e_tail of each arrow in Z^rho, with e_0 = 0."""
    out = []
    for t, h in spec.quiver.arrows:
        d = [0] * spec.rho
        d[h - 1] += 1
        if t:
            d[t - 1] -= 1
        out.append(tuple(d))
    return tuple(out)


def cox_data_of(spec: QuiverFlagSpec) -> GradedCoxData:
    require_toric(spec)
    names = tuple(f"y{a + 1}" for a in range(len(spec.quiver.arrows)))
    # arrows go from lower to higher vertex, so (1, 2, ..., rho) is positive on all of them
    return GradedCoxData(names, arrow_degrees(spec), tuple(range(1, spec.rho + 1)))


def irrelevant_components(spec: QuiverFlagSpec) -> list[tuple[str, ...]]:
    """Generators of the irrelevant ideal, one monomial ideal (y_a : h(a) = i) per vertex i >= 1."""
    names = cox_data_of(spec).names
    return [tuple(names[a] for a in spec.quiver.arrows_into(i)) for i in range(1, spec.rho + 1)]


# ---------------------------------------------------------------------------
# monomials of a given degree


def _budget(data: GradedCoxData, delta: Sequence[int]) -> int:
    return _dot(data.functional, delta)


def _weights(data: GradedCoxData) -> tuple[int, ...]:
    return tuple(_dot(data.functional, d) for d in data.degrees)


def monomials_of_degree(
    data: GradedCoxData, delta: Sequence[int], upper: Sequence[int] | None = None
) -> list[Exponent]:
    """Exponent vectors of all monomials of degree ``delta``.

    Listed in decreasing lexicographic order.  ``upper`` optionally caps each
    exponent.
    """
    delta = tuple(delta)
    if len(delta) != data.rank:
        raise ValueError(f"degree {delta} has the wrong rank")
    n = len(data.degrees)
    weights = _weights(data)
    out: list[Exponent] = []
    u = [0] * n

    def rec(k: int, rest: tuple[int, ...], budget: int):
        if budget < 0:
            return
        if k == n:
            if not any(rest):
                out.append(tuple(u))
            return
        if budget == 0:
            if not any(rest):
                out.append(tuple(u))
            return
        top = budget // weights[k]
        if upper is not None:
            top = min(top, upper[k])
        d = data.degrees[k]
        for e in range(top, -1, -1):
            u[k] = e
            rec(k + 1, tuple(x - e * y for x, y in zip(rest, d)), budget - e * weights[k])
        u[k] = 0

    rec(0, delta, _budget(data, delta))
    return out


def count_monomials(data: GradedCoxData, delta: Sequence[int], upper: Sequence[int] | None = None) -> int:
    """Number of monomials of degree ``delta`` (memoised; no list is built)."""
    return _counter(data, None if upper is None else tuple(upper))(0, tuple(delta))


@lru_cache(maxsize=256)
def _counter(data: GradedCoxData, upper: tuple[int, ...] | None):
    n = len(data.degrees)
    weights = _weights(data)
    w = data.functional

    @lru_cache(maxsize=None)
    def count(k: int, rest: tuple[int, ...]) -> int:
        budget = _dot(w, rest)
        if budget < 0:
            return 0
        if budget == 0 or k == n:
            return int(not any(rest))
        top = budget // weights[k]
        if upper is not None:
            top = min(top, upper[k])
        d = data.degrees[k]
        return sum(count(k + 1, tuple(x - e * y for x, y in zip(rest, d))) for e in range(top + 1))

    return count


def is_effective(data: GradedCoxData, delta: Sequence[int]) -> bool:
    return count_monomials(data, delta) > 0


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# quivers of sections


@dataclass(frozen=True)
class SectionQuiver:
    """Quiver of sections; ``labels[a]`` is the monomial of arrow ``a``."""

    spec: QuiverFlagSpec
    labels: tuple[Exponent, ...]
    data: GradedCoxData
    deltas: tuple[Degree, ...]

    @property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        return self.spec.quiver.arrows

    def counts(self) -> dict[tuple[int, int], int]:
        return self.spec.quiver.arrow_counts()

    def to_json(self) -> dict:
        return {
            "vertices": self.spec.quiver.vertex_count,
            "arrows": [list(a) for a in self.arrows],
            "labels": [list(u) for u in self.labels],
            "label_names": [self.data.monomial_str(u) for u in self.labels],
        }


def _differences(deltas: Sequence[Degree], i: int, j: int) -> Degree:
    return tuple(b - a for a, b in zip(deltas[i], deltas[j]))


def weakly_exceptional_check(data: GradedCoxData, deltas: Sequence[Sequence[int]]) -> bool:
    """No monomial of degree delta_i - delta_j for j > i, and every delta_i (i > 0) effective."""
    deltas = [tuple(d) for d in deltas]
    for j in range(len(deltas)):
        if j and not is_effective(data, _differences(deltas, 0, j)):
            return False
        for i in range(j):
            if is_effective(data, _differences(deltas, j, i)):
                return False
    return True


def quiver_of_sections(data: GradedCoxData, deltas: Sequence[Sequence[int]]) -> SectionQuiver:
    """Arrows i -> j are the monomials of degree delta_j - delta_i that do not factor.

    A monomial factors when it is divisible by a monomial of degree
    delta_k - delta_i for some k other than i, j whose cofactor has degree
    delta_j - delta_k (automatic for monomials).
    """
    deltas = tuple(tuple(int(x) for x in d) for d in deltas)
    if any(len(d) != data.rank for d in deltas):
        raise ValueError("every degree must have the grading rank")
    if any(deltas[0]):
        raise ValueError("the first degree must be 0 (the structure sheaf)")
    if len(set(deltas)) != len(deltas):
        raise NotWeaklyExceptional("the degrees must be distinct")
    if not weakly_exceptional_check(data, deltas):
        raise NotWeaklyExceptional("the sequence is not weakly exceptional")
    n = len(deltas)
    sections = {
        (i, j): monomials_of_degree(data, _differences(deltas, i, j))
        for i in range(n)
        for j in range(i + 1, n)
    }
    arrows: list[tuple[int, int]] = []
    labels: list[Exponent] = []
    for i in range(n):
        for j in range(i + 1, n):
            for m in sections[(i, j)]:
                factors = any(
                    _divides(f, m)
                    for k in range(i + 1, j)
                    for f in sections[(i, k)]
                    if sections[(k, j)]
                )
                if not factors:
                    arrows.append((i, j))
                    labels.append(m)
    spec = make_spec(n, arrows, (1,) * n)
    return SectionQuiver(spec, tuple(labels), data, deltas)


def _paths(quiver: SectionQuiver, bound: int) -> dict[tuple[int, int], list[tuple[int, ...]]]:
    out: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    frontier = [((a,), t, h) for a, (t, h) in enumerate(quiver.arrows)]
    length = 1
    while frontier and length <= bound:
        nxt = []
        for path, t, h in frontier:
            out.setdefault((t, h), []).append(path)
            if length < bound:
                for b, (t2, h2) in enumerate(quiver.arrows):
                    if t2 == h:
                        nxt.append((path + (b,), t, h2))
        frontier = nxt
        length += 1
    return out


@dataclass(frozen=True)
class Binomial:
    """Two parallel paths (arrow indices, 0-based) with equal monomial labels."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __str__(self) -> str:
        word = lambda p: "".join(f"y{a + 1}" for a in p)  # noqa: E731
        return f"{word(self.left)} - {word(self.right)}"


def path_label(quiver: SectionQuiver, path: Sequence[int]) -> Exponent:
    total = [0] * len(quiver.data.names)
    for a in path:
        for k, e in enumerate(quiver.labels[a]):
            total[k] += e
    return tuple(total)


def kernel_binomials(quiver: SectionQuiver, bound: int = 2) -> list[Binomial]:
    out = []
    for (t, h), paths in sorted(_paths(quiver, bound).items()):
        by_label: dict[Exponent, list[tuple[int, ...]]] = {}
        for p in paths:
            by_label.setdefault(path_label(quiver, p), []).append(p)
        for group in by_label.values():
            group.sort()
            for x in range(len(group)):
                for y in range(x + 1, len(group)):
                    out.append(Binomial(group[x], group[y]))
    return out


def multiplication_surjective(data: GradedCoxData, deltas: Sequence[Sequence[int]]) -> bool:
    """Is every monomial of degree sum(delta_i) a product of monomials of degrees delta_i?

    ``deltas`` lists delta_1..delta_rho (no leading zero).
    """
    deltas = [tuple(d) for d in deltas]
    if len(deltas) <= 1:
        return True
    total = tuple(sum(col) for col in zip(*deltas))
    target = set(monomials_of_degree(data, total))
    products = {tuple(0 for _ in data.names)}
    for d in deltas:
        factors = monomials_of_degree(data, d)
        products = {tuple(x + y for x, y in zip(p, f)) for p in products for f in factors}
    return target <= products


def _require_toric_strict(spec: QuiverFlagSpec) -> None:
    require_toric(spec)
    if not spec.is_strict:
        raise NotStrict("some vertex has a single incoming arrow; simplify the quiver first")


def toric_tilting_lines(spec: QuiverFlagSpec) -> list[tuple[int, ...]]:
    """Exponent vectors theta with 0 <= theta_i < s_i."""
    _require_toric_strict(spec)
    return list(product(*(range(spec.s[i]) for i in range(1, spec.rho + 1))))


def pivot_charts(spec: QuiverFlagSpec) -> list[tuple[int, ...]]:
    """One arrow into each vertex i >= 1 (0-based arrow indices)."""
    require_toric(spec)
    return list(product(*(spec.quiver.arrows_into(i) for i in range(1, spec.rho + 1))))


def unit_degrees(spec: QuiverFlagSpec) -> list[Degree]:
    """(0, e_1, ..., e_rho): the degrees of W_0, ..., W_rho."""
    out = [tuple([0] * spec.rho)]
    for i in range(1, spec.rho + 1):
        out.append(tuple(int(k == i - 1) for k in range(spec.rho)))
    return out


def same_quiver(a: QuiverFlagSpec, b: QuiverFlagSpec) -> bool:
    """Equal arrow multiplicities on the same vertex labels (both in topological order)."""
    return (
        a.quiver.vertex_count == b.quiver.vertex_count
        and a.quiver.arrow_counts() == b.quiver.arrow_counts()
    )
