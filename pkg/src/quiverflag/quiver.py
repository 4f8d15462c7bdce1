"""Quivers with a unique source, dimension vectors, and their numerical invariants.

Vertices are always relabelled into a canonical topological order with the
source at 0, so every arrow satisfies ``tail < head``.  Arrow indices are the
positions in the input arrow list and never change.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    CyclicQuiver,
    EmptyModuli,
    InvalidDimensionVector,
    InvalidQuiver,
    MultipleSources,
    UnreachableVertex,
)

Arrow = tuple[int, int]


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(t), int(h)) for t, h in self.arrows))
        if self.vertex_count < 1:
            raise InvalidQuiver("a quiver needs at least one vertex")
        for t, h in self.arrows:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise InvalidQuiver(f"arrow ({t}, {h}) refers to a missing vertex")

    @property
    def rho(self) -> int:
        return self.vertex_count - 1

    def arrows_into(self, i: int) -> list[int]:
        return [a for a, (_, h) in enumerate(self.arrows) if h == i]

    def arrows_out_of(self, i: int) -> list[int]:
        return [a for a, (t, _) in enumerate(self.arrows) if t == i]

    def arrow_counts(self) -> dict[Arrow, int]:
        counts: dict[Arrow, int] = {}
        for arrow in self.arrows:
            counts[arrow] = counts.get(arrow, 0) + 1
        return counts


@dataclass(frozen=True)
class Diagnostics:
    """Result of :func:`validate`.

    ``order[k]`` is the input label of the vertex that becomes ``k``; ``relabel``
    is the inverse map.  ``quiver`` is the relabelled quiver.
    """

    order: tuple[int, ...]
    relabel: dict[int, int] = field(hash=False)
    quiver: Quiver

    @property
    def is_identity(self) -> bool:
        return self.order == tuple(range(len(self.order)))


def validate(quiver: Quiver) -> Diagnostics:
    n = quiver.vertex_count
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for t, h in quiver.arrows:
        indeg[h] += 1
        succ[t].append(h)

    # Kahn's algorithm, smallest label first, so already-ordered input is kept.
    remaining = list(indeg)
    heap = [v for v in range(n) if remaining[v] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            remaining[w] -= 1
            if remaining[w] == 0:
                heapq.heappush(heap, w)
    if len(order) < n:
        raise CyclicQuiver("the quiver contains an oriented cycle")

    sources = [v for v in range(n) if indeg[v] == 0]
    if len(sources) > 1:
        raise MultipleSources(f"vertices {sources} are all sources")
    if sources[0] != 0:
        raise UnreachableVertex(
            f"vertex {sources[0]} is the source but vertex 0 must be; "
            f"vertex {sources[0]} is unreachable from 0"
        )

    relabel = {old: new for new, old in enumerate(order)}
    arrows = tuple((relabel[t], relabel[h]) for t, h in quiver.arrows)
    return Diagnostics(tuple(order), relabel, Quiver(n, arrows))


@dataclass(frozen=True)
class QuiverFlagSpec:
    """A quiver with unique source together with a dimension vector ``dims``.

    The quiver stored here is already in topological order.  ``labels[k]`` is
    the input label of vertex ``k``.
    """

    quiver: Quiver
    dims: tuple[int, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        dims = tuple(int(r) for r in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) != self.quiver.vertex_count:
            raise InvalidDimensionVector(
                f"{len(dims)} dimensions for {self.quiver.vertex_count} vertices"
            )
        if dims[0] != 1:
            raise InvalidDimensionVector("the source must carry dimension 1")
        if any(r < 1 for r in dims):
            raise InvalidDimensionVector("dimensions must be positive")
        if any(t >= h for t, h in self.quiver.arrows):
            raise InvalidQuiver("spec quivers must be in topological order; use make_spec")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(dims))))

    @property
    def rho(self) -> int:
        return self.quiver.rho

    @cached_property
    def s(self) -> tuple[int, ...]:
        """Weighted in-degrees, indexed by vertex (entry 0 is 0)."""
        s = [0] * self.quiver.vertex_count
        for t, h in self.quiver.arrows:
            s[h] += self.dims[t]
        return tuple(s)

    @cached_property
    def s_prime(self) -> tuple[int, ...]:
        """Weighted out-degrees, indexed by vertex."""
        sp = [0] * self.quiver.vertex_count
        for t, h in self.quiver.arrows:
            sp[t] += self.dims[h]
        return tuple(sp)

    @property
    def is_nonempty(self) -> bool:
        return all(self.dims[i] <= self.s[i] for i in range(1, self.rho + 1))

    @property
    def is_strict(self) -> bool:
        return all(self.dims[i] < self.s[i] for i in range(1, self.rho + 1))

    @property
    def is_toric(self) -> bool:
        return all(r == 1 for r in self.dims)

    def tails_into(self, i: int) -> list[int]:
        """Tails of the arrows with head ``i``, in arrow order."""
        return [t for t, h in self.quiver.arrows if h == i]

    def require_nonempty(self) -> None:
        if not self.is_nonempty:
            bad = [i for i in range(1, self.rho + 1) if self.dims[i] > self.s[i]]
            raise EmptyModuli(f"r_i > s_i at vertices {bad}")

    def to_json(self) -> dict:
        return {
            "vertices": self.quiver.vertex_count,
            "arrows": [list(a) for a in self.quiver.arrows],
            "dims": list(self.dims),
        }


def make_spec(vertex_count: int, arrows: Iterable[Sequence[int]], dims: Sequence[int]) -> QuiverFlagSpec:
    """Validate, relabel into topological order, and build a spec."""
    diag = validate(Quiver(vertex_count, tuple(tuple(a) for a in arrows)))
    new_dims = tuple(dims[old] for old in diag.order) if len(dims) == vertex_count else tuple(dims)
    return QuiverFlagSpec(diag.quiver, new_dims, diag.order)


def spec_from_counts(counts: Mapping[Arrow, int], dims: Sequence[int]) -> QuiverFlagSpec:
    """Build a spec from arrow multiplicities ``{(tail, head): n}``.

    Arrows are listed in sorted ``(tail, head)`` order.
    """
    arrows = [edge for edge in sorted(counts) for _ in range(counts[edge])]
    return make_spec(len(dims), arrows, dims)


def spec_from_json(doc: Mapping) -> QuiverFlagSpec:
    try:
        n = int(doc["vertices"])
        arrows = [tuple(int(x) for x in a) for a in doc["arrows"]]
        dims = [int(r) for r in doc.get("dims", [1] * n)]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidQuiver(f"malformed quiver document: {exc}") from exc
    if any(len(a) != 2 for a in arrows):
        raise InvalidQuiver("arrows must be [tail, head] pairs")
    return make_spec(n, arrows, dims)


def load_spec(path) -> QuiverFlagSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidQuiver(f"{path}: {exc}") from exc
    return spec_from_json(doc)


def s_vectors(spec: QuiverFlagSpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(s_1..s_rho, s'_0..s'_rho)``."""
    return spec.s[1:], spec.s_prime


def is_nonempty(spec: QuiverFlagSpec) -> bool:
    return spec.is_nonempty


def dimension(spec: QuiverFlagSpec) -> int:
    spec.require_nonempty()
    return sum(spec.dims[i] * (spec.s[i] - spec.dims[i]) for i in range(1, spec.rho + 1))


def path_counts_from(quiver: Quiver, i: int) -> list[int]:
    """Number of paths from ``i`` to every vertex, trivial path included."""
    counts = [0] * quiver.vertex_count
    counts[i] = 1
    # arrows go tail < head, so one sweep in head order suffices
    for t, h in sorted(quiver.arrows, key=lambda a: a[1]):
        if t >= i:
            counts[h] += counts[t]
    return counts


def path_count(quiver: Quiver, i: int, j: int) -> int:
    if any(t >= h for t, h in quiver.arrows):
        quiver = validate(quiver).quiver
    return path_counts_from(quiver, i)[j]


def anticanonical_exponents(spec: QuiverFlagSpec) -> tuple[int, ...]:
    """Exponents of det(W_i) in the anticanonical bundle, for i = 1..rho."""
    spec.require_nonempty()
    return tuple(spec.s[i] - spec.s_prime[i] for i in range(1, spec.rho + 1))


def fano_sufficient(spec: QuiverFlagSpec) -> bool:
    # sufficient only: False does not certify that the variety is not Fano
    return all(spec.s[i] > spec.s_prime[i] for i in range(1, spec.rho + 1))


def _contract(spec: QuiverFlagSpec, i: int) -> QuiverFlagSpec:
    (a,) = spec.quiver.arrows_into(i)
    tail = spec.quiver.arrows[a][0]
    arrows = []
    for b, (t, h) in enumerate(spec.quiver.arrows):
        if b == a:
            continue
        if t == i:
            t = tail
        arrows.append((t, h))
    keep = [v for v in range(spec.quiver.vertex_count) if v != i]
    index = {v: k for k, v in enumerate(keep)}
    arrows = [(index[t], index[h]) for t, h in arrows]
    dims = [spec.dims[v] for v in keep]
    labels = tuple(spec.labels[v] for v in keep)
    contracted = make_spec(len(keep), arrows, dims)
    return QuiverFlagSpec(contracted.quiver, contracted.dims, tuple(labels[v] for v in contracted.labels))


def simplify(spec: QuiverFlagSpec) -> QuiverFlagSpec:
    """Contract every vertex with ``r_i = s_i = 1`` until none is left.

    Such a vertex has a single incoming arrow; it is identified with the tail
    of that arrow, which leaves the moduli space unchanged.
    """
    while True:
        for i in range(1, spec.rho + 1):
            if spec.dims[i] == 1 and spec.s[i] == 1:
                spec = _contract(spec, i)
                break
        else:
            return spec


def unstable_codimension(spec: QuiverFlagSpec) -> int | None:
    """Codimension of the unstable locus, ``min_i (s_i - r_i + 1)``.

    ``None`` for the one-vertex spec, where nothing is unstable.
    """
    spec.require_nonempty()
    if spec.rho == 0:
        return None
    return min(spec.s[i] - spec.dims[i] + 1 for i in range(1, spec.rho + 1))
