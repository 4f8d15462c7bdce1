import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import all_paths
from conftest import random_strict_spec
from quiverflag import catalog
from quiverflag.errors import CyclicQuiver, EmptyModuli, MultipleSources, UnreachableVertex
from quiverflag.quiver import (
    Quiver,
    anticanonical_exponents,
    dimension,
    fano_sufficient,
    is_nonempty,
    make_spec,
    path_count,
    path_counts_from,
    s_vectors,
    simplify,
    spec_from_json,
    unstable_codimension,
    validate,
)


def test_validate_keeps_topological_order(p2p1):
    diag = validate(Quiver(3, ((0, 1), (0, 1), (0, 2), (1, 2), (1, 2))))
    assert diag.order == (0, 1, 2)
    assert diag.is_identity


def test_validate_relabels_unordered_input():
    diag = validate(Quiver(3, ((0, 2), (2, 1))))
    assert diag.order == (0, 2, 1)
    assert diag.quiver.arrows == ((0, 1), (1, 2))


def test_validate_single_vertex():
    assert validate(Quiver(1, ())).order == (0,)


def test_validate_rejects_bad_quivers():
    with pytest.raises(CyclicQuiver):
        validate(Quiver(2, ((0, 1), (1, 0))))
    with pytest.raises(MultipleSources):
        validate(Quiver(3, ((0, 2), (1, 2))))
    with pytest.raises(UnreachableVertex):
        validate(Quiver(2, ((1, 0),)))


def test_s_vectors(p2p1, tower, gr_bundle):
    assert s_vectors(p2p1) == ((2, 3), (3, 2, 0))
    assert s_vectors(tower)[0] == (2, 5, 3)
    assert s_vectors(gr_bundle)[0] == (4, 5)


def test_nonempty():
    assert is_nonempty(catalog.kronecker(4, 2))
    assert not is_nonempty(catalog.kronecker(2, 3))
    assert is_nonempty(catalog.p2_bundle_tower())


def test_dimension(p2p1, gr_bundle, gr42):
    assert dimension(p2p1) == 3
    assert dimension(gr_bundle) == 10
    assert dimension(gr42) == 4
    with pytest.raises(EmptyModuli):
        dimension(catalog.kronecker(2, 3))


def test_path_count(gr_bundle):
    assert path_count(gr_bundle.quiver, 0, 2) == 9
    assert path_count(gr_bundle.quiver, 1, 1) == 1
    assert path_count(catalog.flag(4, (1, 1)).quiver, 0, 2) == 4


def test_path_count_matches_enumeration():
    rng = random.Random(7)
    for _ in range(20):
        spec = random_strict_spec(rng, max_rho=5)
        arrows = spec.quiver.arrows
        for i in range(spec.quiver.vertex_count):
            counts = path_counts_from(spec.quiver, i)
            for j in range(spec.quiver.vertex_count):
                assert counts[j] == len(all_paths(arrows, i, j))


def test_anticanonical(p2p1, tower):
    assert anticanonical_exponents(p2p1) == (0, 3)
    assert anticanonical_exponents(tower) == (-3, 3, 3)
    assert anticanonical_exponents(catalog.kronecker(5, 2)) == (5,)


def test_fano_sufficient(p2p1, tower, gr42):
    assert fano_sufficient(gr42)
    assert not fano_sufficient(p2p1)
    assert not fano_sufficient(tower)


def test_simplify_chain_to_point():
    chain = make_spec(3, [(0, 1), (1, 2)], (1, 1, 1))
    assert simplify(chain).quiver.vertex_count == 1


def test_simplify_fixed_point(p2p1):
    assert simplify(p2p1) == p2p1


def test_simplify_contracts_sink():
    spec = make_spec(3, [(0, 1)] * 3 + [(1, 2)], (1, 1, 1))
    out = simplify(spec)
    assert out.quiver.arrows == ((0, 1),) * 3
    assert out.labels == (0, 1)


def test_unstable_codimension(p2p1, gr42):
    assert unstable_codimension(p2p1) == 2
    assert unstable_codimension(gr42) == 3
    assert unstable_codimension(make_spec(3, [(0, 1), (0, 1), (1, 2)], (1, 1, 1))) == 1
    assert unstable_codimension(catalog.point()) is None


def test_spec_from_json_relabels():
    spec = spec_from_json({"vertices": 3, "arrows": [[0, 2], [2, 1], [0, 2]], "dims": [1, 1, 1]})
    assert spec.quiver.arrows == ((0, 1), (1, 2), (0, 1))
    assert spec.labels == (0, 2, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_simplify_invariants(seed):
    rng = random.Random(seed)
    spec = random_strict_spec(rng, max_rho=4)
    # add a contractible vertex hanging off a random vertex
    v = spec.quiver.vertex_count
    t = rng.randrange(v)
    arrows = list(spec.quiver.arrows) + [(t, v)]
    if rng.random() < 0.5 and t + 1 < v:
        # heads after t cannot reach t, so this stays acyclic
        arrows.append((v, rng.randrange(t + 1, v)))
    grown = make_spec(v + 1, arrows, spec.dims + (1,))
    once = simplify(grown)
    assert simplify(once) == once
    assert dimension(once) == dimension(grown)
    # a contracted vertex v has W_v = W_tail, so its exponent moves to the tail
    target = list(range(grown.quiver.vertex_count))
    for v in range(1, grown.quiver.vertex_count):
        if grown.dims[v] == 1 and grown.s[v] == 1:
            (a,) = grown.quiver.arrows_into(v)
            target[v] = target[grown.quiver.arrows[a][0]]
    moved = {}
    for v, e in zip(range(1, grown.rho + 1), anticanonical_exponents(grown)):
        if target[v]:
            key = grown.labels[target[v]]
            moved[key] = moved.get(key, 0) + e
    kept = dict(zip(once.labels[1:], anticanonical_exponents(once)))
    assert kept == moved
    if once.is_strict:
        assert (dimension(once) == 0) == (once.quiver.vertex_count == 1)
