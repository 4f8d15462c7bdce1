import random
from fractions import Fraction
from math import comb

import pytest

from oracles import generated_by_source, sympy_rank
from quiverflag import catalog
from quiverflag.errors import EmptyModuli, NotACharacter, NotStable, ShapeMismatch
from quiverflag.linalg import rank, rref, sparse_rank
from quiverflag.moduli import (
    Representation,
    assemble,
    chamber_line_bundle,
    echelon_chart,
    is_special_stable,
    minor_index_sets,
    random_stable,
    representation,
    representation_from_json,
    special_weight,
)
from quiverflag.quiver import dimension


def test_special_weight(p2p1, gr42):
    assert special_weight(p2p1) == (-2, 1, 1)
    assert special_weight(gr42) == (-2, 1)
    assert special_weight(catalog.point()) == (0,)
    for spec in (p2p1, gr42, catalog.grassmann_bundle_122()):
        assert sum(t * r for t, r in zip(special_weight(spec), spec.dims)) == 0


def test_assemble(p2p1):
    k2 = catalog.kronecker(2)
    rep = assemble(k2, [[[3]], [[5]]])
    assert rep.block(1) == ((3, 5),)
    rep = assemble(p2p1, [[[1]]] * 5)
    assert rep.block(1) == ((1, 1),) and rep.block(2) == ((1, 1, 1),)
    with pytest.raises(ShapeMismatch):
        assemble(k2, [[[1, 2]], [[5]]])


def test_stability_examples(p2p1, gr42):
    assert is_special_stable(p2p1, representation(p2p1, [[[1, 0]], [[0, 1, 0]]]))
    assert not is_special_stable(p2p1, representation(p2p1, [[[0, 0]], [[0, 1, 0]]]))
    assert not is_special_stable(gr42, representation(gr42, [[[1, 2, 3, 4], [1, 2, 3, 4]]]))


def test_random_stable(p2p1):
    assert is_special_stable(p2p1, random_stable(p2p1, 0))
    assert random_stable(p2p1, 4) == random_stable(p2p1, 4)
    with pytest.raises(EmptyModuli):
        random_stable(catalog.kronecker(2, 3), 0)


def test_random_stable_many_seeds(gr_bundle):
    assert all(is_special_stable(gr_bundle, random_stable(gr_bundle, seed)) for seed in range(1000))


def _random_fine_maps(spec, rng, deficient):
    maps = []
    for t, h in spec.quiver.arrows:
        maps.append(
            [[Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(spec.dims[t])] for _ in range(spec.dims[h])]
        )
    if deficient:
        # kill all maps into one vertex, or make them share one row
        v = rng.randint(1, spec.rho)
        for a, (t, h) in enumerate(spec.quiver.arrows):
            if h == v:
                if rng.random() < 0.5:
                    maps[a] = [[0] * spec.dims[t] for _ in range(spec.dims[h])]
                else:
                    maps[a] = [list(maps[a][0]) for _ in range(spec.dims[h])]
    return maps


def test_stability_matches_generation_by_source():
    rng = random.Random(0)
    specs = [catalog.p2_bundle_over_p1(), catalog.grassmann_bundle_122(), catalog.kronecker(4, 2), catalog.flag(4, (2, 1))]
    seen = {True: 0, False: 0}
    for k in range(200):
        spec = specs[k % len(specs)]
        maps = _random_fine_maps(spec, rng, deficient=k % 3 == 0)
        verdict = is_special_stable(spec, assemble(spec, maps))
        assert verdict == generated_by_source(spec.quiver.arrows, spec.dims, maps)
        seen[verdict] += 1
    assert seen[True] and seen[False]


def test_echelon_chart(gr42, p2p1):
    chart = echelon_chart(gr42, random_stable(gr42, 1))
    assert chart.free_entries == 4 == dimension(gr42)
    assert echelon_chart(p2p1, random_stable(p2p1, 2)).free_entries == 3
    again = echelon_chart(gr42, Representation(chart.forms))
    assert again.forms == chart.forms and again.pivots == chart.pivots
    with pytest.raises(NotStable):
        echelon_chart(p2p1, representation(p2p1, [[[0, 0]], [[0, 1, 0]]]))


def test_minor_index_sets(p2p1, gr42):
    assert minor_index_sets(p2p1) == {1: [(1,), (2,)], 2: [(1,), (2,), (3,)]}
    assert len(minor_index_sets(gr42)[1]) == comb(4, 2)
    square = catalog.kronecker(2, 2)
    assert minor_index_sets(square) == {1: [(1, 2)]}


def test_chamber_line_bundle(p2p1):
    out = chamber_line_bundle(p2p1, special_weight(p2p1))
    assert out.exponents == (1, 1) and out.ample_hint
    eta = chamber_line_bundle(p2p1, (-1, 1, 0))
    assert eta.exponents == (1, 0) and not eta.ample_hint
    with pytest.raises(NotACharacter):
        chamber_line_bundle(p2p1, (0, 1, 1))


def test_representation_json(p2p1):
    rep = representation_from_json(p2p1, {"matrices": [[["1", "0"]], [["0", "1", "3/7"]]]})
    assert rep.block(2)[0][2] == Fraction(3, 7)
    assert representation_from_json(p2p1, rep.to_json()) == rep
    with pytest.raises(ShapeMismatch):
        representation_from_json(p2p1, {"matrices": [[["1"]]]})


def test_rank_against_sympy():
    rng = random.Random(9)
    for _ in range(200):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 6)
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(cols)] for _ in range(rows)]
        if rng.random() < 0.4 and rows > 1:
            m[-1] = [2 * x for x in m[0]]
        assert rank(m) == sympy_rank(m)
        form, pivots = rref(m)
        assert len(pivots) == rank(m)


def test_sparse_rank_against_dense():
    rng = random.Random(4)
    for _ in range(100):
        cols = [{r: rng.randint(-2, 2) for r in rng.sample(range(6), rng.randint(0, 4))} for _ in range(rng.randint(1, 7))]
        dense = [[col.get(r, 0) for col in cols] for r in range(6)]
        assert sparse_rank(cols) == sympy_rank(dense)
