"""Simplicial integer cones: rays, inward facet normals, membership, the cone
divisibility order, Hilbert bases, cone-level Apery sets, down-sets and
bounded lattice-point enumeration.

A cone is stored by its d primitive rays together with d primitive inward
facet normals h_1..h_d satisfying h_i(r_j) = 0 for i != j and h_i(r_i) > 0,
so that an integer point lies in the cone iff every normal is nonnegative on
it.  Everything downstream (Apery polytopes, depth regions, down-sets)
reduces to integer comparisons against these normals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import lattice
from .errors import NotFullRank, NotInCone, NotSimplicial, RayMismatch
from .lattice import Vec, dot, vneg, vsub


def _simplex_feasible(columns: Sequence[Vec], target: Vec) -> bool:
    """Exact test for existence of rational lambda >= 0 with
    sum_i lambda_i * columns_i = target (phase-one simplex, Bland's rule)."""
    d = len(target)
    m = len(columns)
    if m == 0:
        return all(x == 0 for x in target)
    rows = []
    rhs = []
    for i in range(d):
        row = [Fraction(c[i]) for c in columns]
        b = Fraction(target[i])
        if b < 0:
            row = [-x for x in row]
            b = -b
        # artificial block
        row += [Fraction(1) if k == i else Fraction(0) for k in range(d)]
        rows.append(row)
        rhs.append(b)
    ncols = m + d
    basis = [m + i for i in range(d)]
    cost = [Fraction(0)] * m + [Fraction(1)] * d
    # reduced costs for the all-artificial basis
    reduced = [cost[j] - sum(rows[i][j] for i in range(d)) for j in range(ncols)]
    objective = -sum(rhs)
    while True:
        enter = -1
        for j in range(ncols):
            if reduced[j] < 0:
                enter = j
                break
        if enter == -1:
            break
        leave = -1
        best = None
        for i in range(d):
            if rows[i][enter] > 0:
                ratio = rhs[i] / rows[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave == -1:
            # phase-one objective is bounded; unreachable
            raise AssertionError("unbounded phase-one simplex")
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        rhs[leave] = rhs[leave] / piv
        for i in range(d):
            if i != leave and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
                rhs[i] -= f * rhs[leave]
        f = reduced[enter]
        reduced = [x - f * y for x, y in zip(reduced, rows[leave])]
        objective -= f * rhs[leave]
        basis[leave] = enter
    return objective == 0


def in_rational_cone(target: Vec, generators: Sequence[Vec]) -> bool:
    """Exact membership of target in the rational cone spanned by generators."""
    return _simplex_feasible(generators, target)


@dataclass(frozen=True)
class SimplicialCone:
    """Full-rank simplicial cone C = cone(rays) intersected with N^d."""

    dim: int
    rays: tuple[Vec, ...]
    facet_normals: tuple[Vec, ...]

    def heights(self, x: Vec) -> tuple[int, ...]:
        """Values of the facet normals on x."""
        return tuple(dot(h, x) for h in self.facet_normals)

    def contains(self, x: Vec) -> bool:
        return all(dot(h, x) >= 0 for h in self.facet_normals)

    def le(self, x: Vec, y: Vec) -> bool:
        return self.contains(vsub(y, x))

    @cached_property
    def hilbert(self) -> tuple[Vec, ...]:
        return hilbert_basis(self)


def from_generators(gens: Iterable[Vec]) -> SimplicialCone:
    """Cone spanned by the generators, with extremal rays identified by exact
    rational feasibility and facet normals solved from the ray orthogonality
    systems."""
    pts = sorted({tuple(int(x) for x in g) for g in gens if any(g)})
    if not pts:
        raise NotFullRank("no nonzero generators")
    d = len(pts[0])
    for p in pts:
        if len(p) != d:
            raise lattice.DimensionMismatch("mixed generator dimensions")
        if any(x < 0 for x in p):
            raise NotInCone(f"generator {p} outside N^{d}")
    prim = sorted({lattice.primitive(p) for p in pts})
    rank = lattice.hnf(prim).rank
    if rank < d:
        raise NotFullRank(f"generators span rank {rank} < {d}")
    extremal = []
    for i, p in enumerate(prim):
        others = prim[:i] + prim[i + 1 :]
        if not in_rational_cone(p, others):
            extremal.append(p)
    if len(extremal) != d:
        raise NotSimplicial(f"{len(extremal)} extremal rays, rank {rank}")
    rays = tuple(sorted(extremal))
    normals = []
    for i in range(d):
        others = [rays[j] for j in range(d) if j != i]
        ker = lattice.orthogonal_basis(others, d)
        if len(ker) != 1:
            raise NotSimplicial("rays are linearly dependent")
        h = ker[0]
        v = dot(h, rays[i])
        if v == 0:
            raise NotSimplicial("rays are linearly dependent")
        if v < 0:
            h = vneg(h)
        normals.append(h)
    return SimplicialCone(dim=d, rays=rays, facet_normals=tuple(normals))


def contains(cone: SimplicialCone, x: Vec) -> bool:
    return cone.contains(x)


def cone_le(cone: SimplicialCone, x: Vec, y: Vec) -> bool:
    """x <=_C y, i.e. y - x lies in the cone."""
    return cone.contains(vsub(y, x))


def _box_bounds(cone: SimplicialCone, bounds: Sequence[int]) -> list[int]:
    """Componentwise bound on points x in C with h_i(x) < bounds[i]:
    writing x = sum q_i r_i gives q_i <= (bounds[i]-1)/h_i(r_i)."""
    caps = []
    for k in range(cone.dim):
        cap = Fraction(0)
        for i, r in enumerate(cone.rays):
            hi = dot(cone.facet_normals[i], r)
            qmax = Fraction(max(bounds[i] - 1, 0), hi)
            cap += qmax * r[k]
        caps.append(int(cap))
    return caps


def enumerate_region(cone: SimplicialCone, bounds: Sequence[int]) -> Iterator[Vec]:
    """Yield, in lexicographic order, the integer points x in the cone with
    h_i(x) < bounds[i] for every facet normal.  Finite because the normals
    are linearly independent."""
    if len(bounds) != cone.dim:
        raise lattice.DimensionMismatch("one bound per facet normal required")
    if any(b <= 0 for b in bounds):
        return
    caps = _box_bounds(cone, bounds)
    normals = cone.facet_normals
    for x in itertools.product(*(range(c + 1) for c in caps)):
        ok = True
        for h, b in zip(normals, bounds):
            v = dot(h, x)
            if v < 0 or v >= b:
                ok = False
                break
        if ok:
            yield x


def interval(cone: SimplicialCone, top: Vec) -> Iterator[Vec]:
    """Points x in C with x <=_C top, i.e. 0 <= h_i(x) <= h_i(top)."""
    return enumerate_region(cone, [h + 1 for h in cone.heights(top)])


def downset(cone: SimplicialCone, points: Iterable[Vec]) -> tuple[Vec, ...]:
    """Union of the cone-order intervals below the given points."""
    out: set[Vec] = set()
    for a in points:
        if not cone.contains(a):
            raise NotInCone(f"{a} outside the cone")
        out.update(interval(cone, a))
    return tuple(sorted(out))


def is_antichain(cone: SimplicialCone, points: Sequence[Vec]) -> bool:
    """No two distinct points comparable under the cone order."""
    pts = list(points)
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            if x == y:
                continue
            if cone.le(x, y) or cone.le(y, x):
                return False
    return True


def hilbert_basis(cone: SimplicialCone) -> tuple[Vec, ...]:
    """Unique minimal monoid generating set of C intersected with Z^d.

    Candidates are the integer points of the fundamental parallelotope of the
    rays (which contains the rays themselves); a candidate is kept iff its
    cone-order interval contains no third point, i.e. it admits no splitting
    into two nonzero cone points.
    """
    bounds = [dot(cone.facet_normals[i], cone.rays[i]) + 1 for i in range(cone.dim)]
    candidates = [p for p in enumerate_region(cone, bounds) if any(p)]
    basis = []
    for p in candidates:
        splittable = False
        for u in interval(cone, p):
            if any(u) and u != p:
                splittable = True
                break
        if not splittable:
            basis.append(p)
    return tuple(sorted(basis))


def _ray_multiplier(ray: Vec, elem: Vec) -> int:
    """elem = q * ray for a positive integer q, else RayMismatch."""
    q = 0
    for r, e in zip(ray, elem):
        if r == 0:
            if e != 0:
                raise RayMismatch(f"{elem} not on ray {ray}")
            continue
        if e % r != 0:
            raise RayMismatch(f"{elem} not an integer multiple of ray {ray}")
        qi = e // r
        if q and qi != q:
            raise RayMismatch(f"{elem} not on ray {ray}")
        q = qi
    if q <= 0:
        raise RayMismatch(f"{elem} not a positive multiple of ray {ray}")
    return q


def match_ray_elements(cone: SimplicialCone, elements: Sequence[Vec]) -> tuple[Vec, ...]:
    """Pair one element per extremal ray, returned in ray order; the input
    order is immaterial."""
    elems = [tuple(a) for a in elements]
    if len(elems) != cone.dim:
        raise RayMismatch(f"expected {cone.dim} ray elements, got {len(elems)}")
    out: list[Vec | None] = [None] * cone.dim
    for a in elems:
        placed = False
        for i, ray in enumerate(cone.rays):
            try:
                _ray_multiplier(ray, a)
            except RayMismatch:
                continue
            if out[i] is not None:
                raise RayMismatch(f"two elements on ray {ray}")
            out[i] = a
            placed = True
            break
        if not placed:
            raise RayMismatch(f"{a} lies on no extremal ray")
    return tuple(out)  # type: ignore[arg-type]


@dataclass(frozen=True)
class ConeApery:
    """Integer points of C below the ray elements in every normal direction:
    exactly one representative per residue class modulo the group generated
    by the ray elements."""

    cone: SimplicialCone
    ray_elements: tuple[Vec, ...]
    elements: tuple[Vec, ...]


def cone_apery(cone: SimplicialCone, ray_elements: Sequence[Vec]) -> ConeApery:
    """Apery set of the cone with respect to one element per extremal ray:
    {x in C : h_i(x) < h_i(a_i) for all i}."""
    elems = match_ray_elements(cone, ray_elements)
    bounds = [dot(cone.facet_normals[i], elems[i]) for i in range(cone.dim)]
    pts = tuple(enumerate_region(cone, bounds))
    return ConeApery(cone=cone, ray_elements=tuple(elems), elements=pts)


def class_decompose(cone: SimplicialCone, ray_elements: Sequence[Vec], x: Vec):
    """Write x in C uniquely as r + sum_i k_i * a_i with r in the cone Apery
    set of the ray elements; returns (r, k)."""
    if not cone.contains(x):
        raise NotInCone(f"{x} outside the cone")
    elems = match_ray_elements(cone, ray_elements)
    ks = []
    for i in range(cone.dim):
        hi = cone.facet_normals[i]
        q = Fraction(dot(hi, x), dot(hi, elems[i]))
        ks.append(q.numerator // q.denominator)
    r = x
    for k, a in zip(ks, elems):
        r = vsub(r, lattice.vscale(k, a))
    heights = cone.heights(r)
    caps = [dot(cone.facet_normals[i], elems[i]) for i in range(cone.dim)]
    if not all(0 <= h < c for h, c in zip(heights, caps)):
        raise AssertionError("class decomposition out of range")
    return r, tuple(ks)
