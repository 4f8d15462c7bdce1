"""Representations, stability for the special weight, echelon charts and characters."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import NotACharacter, NotStable, ShapeMismatch
from .linalg import Matrix, rank, rref, to_matrix
from .quiver import QuiverFlagSpec


@dataclass(frozen=True)
class Representation:
    """``matrices[i - 1]`` is the r_i x s_i block w_i at vertex i."""

    matrices: tuple[Matrix, ...]

    def block(self, i: int) -> Matrix:
        return self.matrices[i - 1]

    def to_json(self) -> dict:
        return {"matrices": [[[str(x) for x in row] for row in m] for m in self.matrices]}


def check_shapes(spec: QuiverFlagSpec, rep: Representation) -> None:
    if len(rep.matrices) != spec.rho:
        raise ShapeMismatch(f"expected {spec.rho} blocks, got {len(rep.matrices)}")
    for i in range(1, spec.rho + 1):
        m = rep.block(i)
        r, s = spec.dims[i], spec.s[i]
        if len(m) != r or any(len(row) != s for row in m):
            raise ShapeMismatch(f"block at vertex {i} must be {r} x {s}")


def representation(spec: QuiverFlagSpec, matrices: Sequence[Sequence[Sequence]]) -> Representation:
    rep = Representation(tuple(to_matrix(m) for m in matrices))
    check_shapes(spec, rep)
    return rep


def special_weight(spec: QuiverFlagSpec) -> tuple[int, ...]:
    return (-sum(spec.dims[1:]),) + (1,) * spec.rho


def assemble(spec: QuiverFlagSpec, arrow_maps: Sequence[Sequence[Sequence]]) -> Representation:
    """Concatenate one r_head x r_tail matrix per arrow into the blocks w_i."""
    arrows = spec.quiver.arrows
    if len(arrow_maps) != len(arrows):
        raise ShapeMismatch(f"expected {len(arrows)} arrow maps, got {len(arrow_maps)}")
    blocks: list[list[list[Fraction]]] = [
        [[] for _ in range(spec.dims[i])] for i in range(1, spec.rho + 1)
    ]
    for a, ((t, h), m) in enumerate(zip(arrows, arrow_maps)):
        m = to_matrix(m)
        if len(m) != spec.dims[h] or any(len(row) != spec.dims[t] for row in m):
            raise ShapeMismatch(
                f"arrow {a} ({t}->{h}) needs a {spec.dims[h]} x {spec.dims[t]} matrix"
            )
        for row, target in zip(m, blocks[h - 1]):
            target.extend(row)
    return representation(spec, blocks)


def is_special_stable(spec: QuiverFlagSpec, rep: Representation) -> bool:
    """Stability for the special weight: every block w_i has full rank r_i."""
    check_shapes(spec, rep)
    return all(rank(rep.block(i)) == spec.dims[i] for i in range(1, spec.rho + 1))


def random_stable(spec: QuiverFlagSpec, seed: int = 0, spread: int = 3) -> Representation:
    """A stable representation: an identity block in random columns, small rationals elsewhere."""
    spec.require_nonempty()
    rng = random.Random(seed)
    blocks = []
    for i in range(1, spec.rho + 1):
        r, s = spec.dims[i], spec.s[i]
        pivots = sorted(rng.sample(range(s), r))
        m = [
            [Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(s)]
            for _ in range(r)
        ]
        for row, col in enumerate(pivots):
            for k in range(r):
                m[k][col] = Fraction(int(k == row))
        blocks.append(m)
    return representation(spec, blocks)


@dataclass(frozen=True)
class EchelonChart:
    forms: tuple[Matrix, ...]
    pivots: tuple[tuple[int, ...], ...]
    free_entries: int


def echelon_chart(spec: QuiverFlagSpec, rep: Representation) -> EchelonChart:
    """Reduced row echelon form of each block.

    The chart coordinates are the entries outside the pivot columns, so
    there are r_i (s_i - r_i) of them at vertex i.
    """
    if not is_special_stable(spec, rep):
        raise NotStable("echelon charts exist only for stable representations")
    forms, pivots = [], []
    free = 0
    for i in range(1, spec.rho + 1):
        form, piv = rref(rep.block(i))
        forms.append(form)
        pivots.append(piv)
        free += spec.dims[i] * (spec.s[i] - len(piv))
    return EchelonChart(tuple(forms), tuple(pivots), free)


def minor_index_sets(spec: QuiverFlagSpec) -> dict[int, list[tuple[int, ...]]]:
    """Column sets (1-based) of the maximal minors of each block w_i."""
    spec.require_nonempty()
    return {
        i: list(combinations(range(1, spec.s[i] + 1), spec.dims[i]))
        for i in range(1, spec.rho + 1)
    }


@dataclass(frozen=True)
class ChamberLineBundle:
    exponents: tuple[int, ...]
    ample_hint: bool


def chamber_line_bundle(spec: QuiverFlagSpec, theta: Sequence) -> ChamberLineBundle:
    """Exponents of det(W_i) in the line bundle attached to a character.

    ``ample_hint`` means all exponents are positive, which is sufficient for
    ampleness but not necessary.
    """
    theta = tuple(Fraction(x) for x in theta)
    if len(theta) != spec.rho + 1:
        raise NotACharacter(f"character needs {spec.rho + 1} entries")
    if sum(t * r for t, r in zip(theta, spec.dims)) != 0:
        raise NotACharacter("sum of theta_i * r_i must vanish")
    exps = theta[1:]
    if any(x.denominator != 1 for x in exps):
        raise NotACharacter("entries at vertices >= 1 must be integers")
    exps = tuple(int(x) for x in exps)
    return ChamberLineBundle(exps, all(x > 0 for x in exps))


def representation_from_json(spec: QuiverFlagSpec, doc: Mapping) -> Representation:
    """Accept ``{"matrices": [w_1, ...]}`` or ``{"arrows": [one map per arrow]}``.

    Entries may be ints or rational strings such as ``"3/7"``.
    """
    try:
        if "matrices" in doc:
            return representation(spec, doc["matrices"])
        if "arrows" in doc:
            return assemble(spec, doc["arrows"])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ShapeMismatch):
            raise
        raise ShapeMismatch(f"malformed representation: {exc}") from exc
    raise ShapeMismatch('representation needs a "matrices" or "arrows" entry')


def load_representation(spec: QuiverFlagSpec, path) -> Representation:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ShapeMismatch(f"{path}: {exc}") from exc
    return representation_from_json(spec, doc)


