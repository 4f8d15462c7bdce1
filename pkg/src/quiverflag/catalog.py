"""Named specs that come up repeatedly: Grassmannians, flags and a few small towers."""

from __future__ import annotations

from .quiver import QuiverFlagSpec, make_spec, spec_from_counts


def kronecker(n: int, r: int = 1) -> QuiverFlagSpec:
    """``n`` arrows 0 -> 1 with rank ``r``: the Grassmannian of r-quotients of k^n."""
    return spec_from_counts({(0, 1): n}, (1, r))


def flag(n: int, ranks) -> QuiverFlagSpec:
    """Chain with n arrows 0 -> 1 and single arrows i -> i+1 (partial flag variety)."""
    ranks = tuple(ranks)
    counts = {(0, 1): n}
    for i in range(1, len(ranks)):
        counts[(i, i + 1)] = 1
    return spec_from_counts(counts, (1, *ranks))


def p2_bundle_over_p1() -> QuiverFlagSpec:
    """Arrows 1,2: 0->1; arrow 3: 0->2; arrows 4,5: 1->2; all ranks 1."""
    return make_spec(3, [(0, 1), (0, 1), (0, 2), (1, 2), (1, 2)], (1, 1, 1))


def p2_bundle_tower() -> QuiverFlagSpec:
    """Three-step toric tower with arrows numbered 1..10 as in the cohomology-cone table."""
    arrows = [(0, 1), (0, 1), (0, 2)] + [(1, 2)] * 4 + [(1, 3), (2, 3), (2, 3)]
    return make_spec(4, arrows, (1, 1, 1, 1))


def grassmann_bundle_122() -> QuiverFlagSpec:
    """4 arrows 0->1, one 0->2, two 1->2 with ranks (1, 2, 2)."""
    return make_spec(3, [(0, 1)] * 4 + [(0, 2), (1, 2), (1, 2)], (1, 2, 2))


def point() -> QuiverFlagSpec:
    return make_spec(1, [], (1,))
