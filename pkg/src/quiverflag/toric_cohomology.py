"""Line bundle cohomology on toric quiver flag varieties.

For a line bundle of degree theta,

    h^k(theta) = sum over u in Z^{arrows} with deg(u) = theta of
                 dim reduced H^{k-1}(Delta restricted to neg(u))

where Delta is the complex of arrow sets containing no full fibre
``{a : head(a) = i}``, and neg(u) is the set of negative coordinates.  The sum
is organised by the sign pattern Z = neg(u): the reduced cohomology depends on
Z alone, and the exponent vectors with a fixed sign pattern are counted as
monomials in flipped variables v_a = -1 - u_a on Z.  Both factors are exact,
so the result is certified without any search radius.

A second route enumerates exponent vectors directly from a lattice basis in
growing boxes and stops after two boxes add nothing.  That stopping rule is a
heuristic, so its results carry a flag; it is practical only for small
lattices and is kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import SearchBudgetExceeded
from .linalg import sparse_rank
from .quiver import QuiverFlagSpec, anticanonical_exponents, dimension
from .toric import (
    GradedCoxData,
    _require_toric_strict,
    arrow_degrees,
    count_monomials,
    positive_functional,
    require_toric,
)


def _bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


class SimplicialComplex:
    """A complex on vertices 0..n-1 given by its facets (as bitmasks)."""

    def __init__(self, n: int, facets: Iterable[int]):
        self.n = n
        self.facets = tuple(sorted(set(facets)))

    @classmethod
    def from_sets(cls, n: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(n, [sum(1 << v for v in f) for f in facets])

    def contains(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def restricted_facets(self, subset: int) -> list[int]:
        traces = {f & subset for f in self.facets}
        return [t for t in traces if not any(t != o and t & o == t for o in traces)]

    def cone_point(self, subset: int) -> int | None:
        """A vertex of ``subset`` lying in every maximal face of the induced complex."""
        restricted = self.restricted_facets(subset)
        if not restricted:
            return None
        common = subset
        for f in restricted:
            common &= f
        return common.bit_length() - 1 if common else None

    def faces(self, subset: int) -> dict[int, list[int]]:
        """Faces of the induced subcomplex grouped by dimension (empty face at -1)."""
        seen: set[int] = set()
        for f in self.restricted_facets(subset):
            verts = _bits(f)
            for size in range(len(verts) + 1):
                for combo in combinations(verts, size):
                    seen.add(sum(1 << v for v in combo))
        out: dict[int, list[int]] = {}
        for face in seen:
            out.setdefault(bin(face).count("1") - 1, []).append(face)
        for faces in out.values():
            faces.sort()
        return out

    def reduced_cohomology(self, subset: int | Iterable[int]) -> dict[int, int]:
        """Nonzero reduced cohomology dimensions over Q of the induced subcomplex.

        Keys run from -1; the empty complex has a single class in degree -1.
        """
        if not isinstance(subset, int):
            subset = sum(1 << v for v in subset)
        return dict(self._reduced(subset))

    @lru_cache(maxsize=None)
    def _reduced(self, subset: int) -> tuple[tuple[int, int], ...]:
        if subset and self.cone_point(subset) is not None:
            return ()
        faces = self.faces(subset)
        top = max(faces)
        index = {d: {f: k for k, f in enumerate(fs)} for d, fs in faces.items()}
        ranks = {}
        for d in range(0, top + 1):
            cols = []
            for face in faces[d]:
                col = {}
                for sign, v in enumerate(_bits(face)):
                    col[index[d - 1][face & ~(1 << v)]] = -1 if sign % 2 else 1
                cols.append(col)
            ranks[d] = sparse_rank(cols)
        out = []
        for d in range(-1, top + 1):
            betti = len(faces[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
            if betti:
                out.append((d, betti))
        return tuple(out)


class IrrelevantComplex(SimplicialComplex):
    """Arrow sets containing no full set of arrows into a vertex i >= 1."""

    def __init__(self, spec: QuiverFlagSpec):
        require_toric(spec)
        self.spec = spec
        n = len(spec.quiver.arrows)
        full = (1 << n) - 1
        fibres = [spec.quiver.arrows_into(i) for i in range(1, spec.rho + 1)]
        facets = [full & ~sum(1 << a for a in choice) for choice in product(*fibres)]
        super().__init__(n, facets)


def reduced_cohomology(complex_: SimplicialComplex, subset) -> dict[int, int]:
    return complex_.reduced_cohomology(subset)


# ---------------------------------------------------------------------------
# lattice of exponent vectors of degree zero


class DegreeLattice:
    """Kernel of the degree map Z^{arrows} -> Z^rho with an explicit basis and lift.

    A spanning arborescence from vertex 0 gives the lift: theta is realised by
    tree arrows alone.  Each other arrow b closes a cycle, giving the basis
    vector e_b - (tree path to head b) + (tree path to tail b).
    """

    def __init__(self, spec: QuiverFlagSpec):
        require_toric(spec)
        self.spec = spec
        self.n = len(spec.quiver.arrows)
        parent: dict[int, int] = {}
        for a, (t, h) in enumerate(spec.quiver.arrows):
            parent.setdefault(h, a)
        self.tree = tuple(parent[i] for i in range(1, spec.rho + 1))
        self.cotree = tuple(a for a in range(self.n) if a not in set(self.tree))

    def _tree_path(self, v: int) -> list[int]:
        path = []
        while v:
            a = self.tree[v - 1]
            path.append(a)
            v = self.spec.quiver.arrows[a][0]
        return path

    def lift(self, theta: Sequence[int]) -> tuple[int, ...]:
        """Exponent vector supported on tree arrows with degree theta."""
        u = [0] * self.n
        # the tree arrow into i carries theta_i plus the flow to its descendants
        flow = list(theta)
        for i in range(self.spec.rho, 0, -1):
            a = self.tree[i - 1]
            u[a] = flow[i - 1]
            t = self.spec.quiver.arrows[a][0]
            if t:
                flow[t - 1] += flow[i - 1]
        return tuple(u)

    @cached_property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for b in self.cotree:
            t, h = self.spec.quiver.arrows[b]
            m = [0] * self.n
            m[b] = 1
            for a in self._tree_path(h):
                m[a] -= 1
            for a in self._tree_path(t):
                m[a] += 1
            out.append(tuple(m))
        return tuple(out)

    @property
    def rank(self) -> int:
        return len(self.cotree)

    def degree(self, u: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.spec.rho
        for e, (t, h) in zip(u, self.spec.quiver.arrows):
            out[h - 1] += e
            if t:
                out[t - 1] -= e
        return tuple(out)

    def points_in_box(self, theta: Sequence[int], radius: int):
        """Exponent vectors of degree theta with every entry in [-radius, radius]."""
        base = self.lift(theta)
        for coeffs in product(range(-radius, radius + 1), repeat=self.rank):
            u = list(base)
            for c, m in zip(coeffs, self.basis):
                if c:
                    for k, x in enumerate(m):
                        u[k] += c * x
            if all(-radius <= x <= radius for x in u):
                yield tuple(u)


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True)
class CohomologyResult:
    theta: tuple[int, ...]
    h: tuple[int, ...]
    stabilized: bool
    radius: int | None
    method: str = "sign-pattern"

    def to_json(self) -> dict:
        return {
            "theta": [str(x) for x in self.theta],
            "h": [str(x) for x in self.h],
            "stabilized": self.stabilized,
            "radius": None if self.radius is None else str(self.radius),
            "method": self.method,
        }


@lru_cache(maxsize=None)
def _contributing_patterns(spec: QuiverFlagSpec) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """Sign patterns Z with nonzero reduced cohomology, with that cohomology."""
    cx = IrrelevantComplex(spec)
    out = []
    for mask in range(1 << cx.n):
        coh = cx._reduced(mask)
        if coh:
            out.append((mask, coh))
    return tuple(out)


@lru_cache(maxsize=None)
def _flipped_data(spec: QuiverFlagSpec, mask: int) -> GradedCoxData:
    degrees = arrow_degrees(spec)
    flipped = tuple(tuple(-x for x in d) if mask >> a & 1 else d for a, d in enumerate(degrees))
    w = positive_functional(flipped)
    if w is None:
        # an unbounded set of exponent vectors would give infinite cohomology
        raise SearchBudgetExceeded(f"sign pattern {_bits(mask)} is not bounded")
    names = tuple(f"v{a + 1}" for a in range(len(degrees)))
    return GradedCoxData(names, flipped, w)


def _pattern_count(spec: QuiverFlagSpec, mask: int, theta: tuple[int, ...], radius: int | None) -> int:
    data = _flipped_data(spec, mask)
    shifted = list(theta)
    for a in _bits(mask):
        for k, x in enumerate(data.degrees[a]):
            shifted[k] -= x  # flipped degree is -d_a, so this adds d_a
    upper = None
    if radius is not None:
        if radius < 1 and mask:
            return 0
        upper = tuple(radius - 1 if mask >> a & 1 else radius for a in range(len(data.degrees)))
    return count_monomials(data, tuple(shifted), upper)


def cohomology_dims(
    spec: QuiverFlagSpec,
    theta: Sequence[int],
    max_k: int | None = None,
    search_radius: int | None = None,
    strict: bool = False,
) -> CohomologyResult:
    """(h^0, ..., h^max_k) of det(W_1)^theta_1 (x) ... (x) det(W_rho)^theta_rho.

    With ``search_radius`` only exponent vectors with entries in
    [-radius, radius] are counted; ``stabilized`` reports whether that already
    gives the exact answer.  With ``strict=True`` an unstabilized result raises
    ``SearchBudgetExceeded`` carrying the lower bound.
    """
    _require_toric_strict(spec)
    theta = tuple(int(x) for x in theta)
    if len(theta) != spec.rho:
        raise ValueError(f"theta needs {spec.rho} entries")
    top = dimension(spec) if max_k is None else max_k
    exact = [0] * (top + 1)
    bounded = [0] * (top + 1)
    for mask, coh in _contributing_patterns(spec):
        for d, betti in coh:
            k = d + 1
            if k > top:
                continue
            exact[k] += betti * _pattern_count(spec, mask, theta, None)
            if search_radius is not None:
                bounded[k] += betti * _pattern_count(spec, mask, theta, search_radius)
    if search_radius is None:
        return CohomologyResult(theta, tuple(exact), True, None)
    result = CohomologyResult(theta, tuple(bounded), bounded == exact, search_radius)
    if strict and not result.stabilized:
        raise SearchBudgetExceeded(
            f"radius {search_radius} misses part of the cohomology; reported values are lower bounds",
            partial=result,
        )
    return result


def cohomology_by_lattice_search(
    spec: QuiverFlagSpec, theta: Sequence[int], max_radius: int = 6
) -> CohomologyResult:
    """Box enumeration over the degree lattice, growing the box until two steps add nothing.

    Independent of the sign-pattern counting; feasible only for lattices of small rank.
    """
    _require_toric_strict(spec)
    theta = tuple(int(x) for x in theta)
    lattice = DegreeLattice(spec)
    cx = IrrelevantComplex(spec)
    top = dimension(spec)
    previous = None
    quiet = 0
    h = [0] * (top + 1)
    radius = 0
    for radius in range(0, max_radius + 1):
        h = [0] * (top + 1)
        for u in lattice.points_in_box(theta, radius):
            mask = sum(1 << a for a, x in enumerate(u) if x < 0)
            for d, betti in cx._reduced(mask):
                if d + 1 <= top:
                    h[d + 1] += betti
        quiet = quiet + 1 if h == previous else 0
        previous = h
        if quiet >= 2:
            return CohomologyResult(theta, tuple(h), True, radius, "lattice-search")
    return CohomologyResult(theta, tuple(h), False, radius, "lattice-search")


def vanishing_region_check(spec: QuiverFlagSpec, theta: Sequence[int]) -> bool:
    """theta_i > -s_i at every vertex, which forces all higher cohomology to vanish."""
    require_toric(spec)
    return all(theta[i - 1] > -spec.s[i] for i in range(1, spec.rho + 1))


def canonical_degree(spec: QuiverFlagSpec) -> tuple[int, ...]:
    return tuple(-x for x in anticanonical_exponents(spec))


def serre_dual_check(spec: QuiverFlagSpec, theta: Sequence[int], radius: int | None = None) -> bool:
    """h^k(theta) = h^{dim - k}(K - theta) for every k."""
    n = dimension(spec)
    left = cohomology_dims(spec, theta, search_radius=radius)
    dual = tuple(k - t for k, t in zip(canonical_degree(spec), theta))
    right = cohomology_dims(spec, dual, search_radius=radius)
    return all(left.h[k] == right.h[n - k] for k in range(n + 1))


def cone_spot_check(spec: QuiverFlagSpec, apex: Sequence[int], k: int, radius: int | None = None) -> bool:
    """Does the line bundle at ``apex`` have nonzero H^k?"""
    result = cohomology_dims(spec, apex, search_radius=radius)
    return k < len(result.h) and result.h[k] >= 1
