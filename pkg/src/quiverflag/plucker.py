"""Determinant bundles, the multigraded Plücker quiver and its ambient toric variety."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .errors import NotStrict
from .quiver import QuiverFlagSpec, dimension, spec_from_counts
from .schur import det_term, h0_dim, hom_dim, trivial_term
from .toric import (
    GradedCoxData,
    _require_toric_strict,
    cox_data_of,
    monomials_of_degree,
    quiver_of_sections,
    unit_degrees,
)

TORIC_EXACT = "toric-exact"
GENERIC_RANK = "generic-rank"


def _require_strict(spec: QuiverFlagSpec) -> None:
    if not spec.is_strict:
        raise NotStrict("some r_i = s_i; simplify the quiver first")


def det_h0(spec: QuiverFlagSpec, i: int) -> int:
    _require_strict(spec)
    return h0_dim(spec, det_term(spec, i))


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    dim_hom: int
    factoring: int
    n_prime: int

    def to_json(self, mode: str) -> dict:
        return {
            "i": str(self.i),
            "j": str(self.j),
            "dim_hom": str(self.dim_hom),
            "factoring": str(self.factoring),
            "n_prime": str(self.n_prime),
            "mode": mode,
        }


@dataclass(frozen=True)
class PluckerQuiver:
    vertex_count: int
    pairs: tuple[PairRecord, ...]
    mode: str

    def counts(self) -> dict[tuple[int, int], int]:
        return {(p.i, p.j): p.n_prime for p in self.pairs if p.n_prime}

    def n_prime(self, i: int, j: int) -> int:
        for p in self.pairs:
            if (p.i, p.j) == (i, j):
                return p.n_prime
        return 0

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "vertices": str(self.vertex_count),
            "pairs": [p.to_json(self.mode) for p in self.pairs],
        }


def _det_hom(spec: QuiverFlagSpec, i: int, j: int) -> int:
    a = trivial_term(spec) if i == 0 else det_term(spec, i)
    return hom_dim(spec, a, det_term(spec, j))


def plucker_quiver(spec: QuiverFlagSpec, mode: str | None = None) -> PluckerQuiver:
    """Quiver of sections of (O, det W_1, ..., det W_rho).

    ``toric-exact`` (all ranks 1) uses monomial factorisation and is exact.
    ``generic-rank`` takes dim Hom(det W_i, det W_j) from the Schur calculus and
    estimates the factoring part as
    min(dim Hom, sum over i < k < j of n'_{i,k} dim Hom(det W_k, det W_j)),
    which is an upper bound for it, so n'_{i,j} may come out too small.
    """
    _require_strict(spec)
    if mode is None:
        mode = TORIC_EXACT if spec.is_toric else GENERIC_RANK
    n = spec.quiver.vertex_count
    if mode == TORIC_EXACT:
        _require_toric_strict(spec)
        data = cox_data_of(spec)
        deltas = unit_degrees(spec)
        sq = quiver_of_sections(data, deltas)
        counts = sq.counts()
        pairs = []
        for i in range(n):
            for j in range(i + 1, n):
                diff = tuple(b - a for a, b in zip(deltas[i], deltas[j]))
                dim_hom = len(monomials_of_degree(data, diff))
                nij = counts.get((i, j), 0)
                pairs.append(PairRecord(i, j, dim_hom, dim_hom - nij, nij))
        return PluckerQuiver(n, tuple(pairs), mode)
    if mode != GENERIC_RANK:
        raise ValueError(f"unknown mode {mode!r}")
    homs = {(i, j): _det_hom(spec, i, j) for i in range(n) for j in range(i + 1, n)}
    n_prime: dict[tuple[int, int], int] = {}
    pairs = []
    for j in range(1, n):
        for i in range(j):
            bound = sum(n_prime[(i, k)] * homs[(k, j)] for k in range(i + 1, j))
            factoring = min(homs[(i, j)], bound)
            n_prime[(i, j)] = homs[(i, j)] - factoring
            pairs.append(PairRecord(i, j, homs[(i, j)], factoring, n_prime[(i, j)]))
    pairs.sort(key=lambda p: (p.i, p.j))
    return PluckerQuiver(n, tuple(pairs), mode)


@dataclass(frozen=True)
class PluckerAmbient:
    spec: QuiverFlagSpec
    dim: int
    codim: int


def plucker_ambient(
    spec: QuiverFlagSpec,
    counts: Mapping[tuple[int, int], int] | None = None,
    mode: str | None = None,
) -> PluckerAmbient:
    """The toric quiver flag variety of Q' with all ranks 1, and the codimension of the embedding.

    ``counts`` replaces the computed arrow multiplicities n'_{i,j}.
    """
    _require_strict(spec)
    if counts is None:
        counts = plucker_quiver(spec, mode).counts()
    ambient = spec_from_counts({k: v for k, v in counts.items() if v}, (1,) * spec.quiver.vertex_count)
    ambient.require_nonempty()
    dim = dimension(ambient)
    return PluckerAmbient(ambient, dim, dim - dimension(spec))


# ---------------------------------------------------------------------------
# Cox ring probe


@dataclass(frozen=True)
class ProbeRow:
    theta: tuple[int, ...]
    target: int
    image: int

    @property
    def surjective(self) -> bool:
        return self.image == self.target

    def to_json(self) -> dict:
        return {
            "theta": [str(x) for x in self.theta],
            "target": str(self.target),
            "image": str(self.image),
            "surjective": self.surjective,
        }


def image_probe(
    data: GradedCoxData,
    ambient_degrees: Sequence[Sequence[int]],
    labels: Sequence[Sequence[int]],
    thetas,
) -> list[ProbeRow]:
    """Compare monomials of degree theta with the image of the labelled variables.

    The ambient variables have degrees ``ambient_degrees`` in the same grading
    as the labels; a monomial of degree theta in them maps to the product of
    their labels.
    """
    n = len(labels)
    ambient = GradedCoxData(tuple(f"z{a + 1}" for a in range(n)), tuple(tuple(d) for d in ambient_degrees))
    rows = []
    for theta in thetas:
        theta = tuple(theta)
        target = monomials_of_degree(data, theta)
        image = set()
        for u in monomials_of_degree(ambient, theta):
            m = [0] * len(data.names)
            for a, e in enumerate(u):
                if e:
                    for k, x in enumerate(labels[a]):
                        m[k] += e * x
            image.add(tuple(m))
        rows.append(ProbeRow(theta, len(target), len(image & set(target))))
    return rows


def cox_probe(spec: QuiverFlagSpec, bound: int) -> list[ProbeRow]:
    """For 0 <= theta_i <= bound, does the Cox ring of the Plücker ambient hit every monomial of degree theta?"""
    _require_toric_strict(spec)
    data = cox_data_of(spec)
    sq = quiver_of_sections(data, unit_degrees(spec))
    # degree of an ambient arrow i -> j is e_j - e_i, the same as its label's degree
    degrees = [data.degree_of(u) for u in sq.labels]
    thetas = product(range(bound + 1), repeat=spec.rho)
    return image_probe(data, degrees, sq.labels, thetas)
