"""Multsets and depth regions of an integer cone.

A multset is a finite antichain of the cone order containing one element on
each extremal ray.  The depth-k regions stratify the cone by how many
multset summands a point dominates; they drive both the generator-input
verification scan and the construction of gaps-not-pseudo-Frobenius
witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import cone as _cone
from .cone import SimplicialCone
from .errors import NotMultset, PFEqualsGaps
from .lattice import Vec, dot, vadd, vsub


def is_multset(cone: SimplicialCone, points: Sequence[Vec]) -> bool:
    """Antichain of the cone order containing an element on every ray."""
    pts = [tuple(p) for p in points]
    if not pts:
        return False
    if any(not cone.contains(p) or not any(p) for p in pts):
        return False
    if not _cone.is_antichain(cone, pts):
        return False
    for i in range(cone.dim):
        on_ray = [
            p
            for p in pts
            if all(dot(cone.facet_normals[j], p) == 0 for j in range(cone.dim) if j != i)
        ]
        if not on_ray:
            return False
    return True


@dataclass(frozen=True)
class Multset:
    cone: SimplicialCone
    elements: tuple[Vec, ...]

    def __post_init__(self):
        elems = tuple(sorted({tuple(p) for p in self.elements}))
        object.__setattr__(self, "elements", elems)
        if not is_multset(self.cone, elems):
            raise NotMultset(f"{list(elems)} is not a multset of the cone")

    @property
    def ray_elements(self) -> tuple[Vec, ...]:
        """The unique on-ray element for each ray, in ray order."""
        out = []
        for i in range(self.cone.dim):
            for p in self.elements:
                if all(
                    dot(self.cone.facet_normals[j], p) == 0
                    for j in range(self.cone.dim)
                    if j != i
                ):
                    out.append(p)
                    break
        return tuple(out)


def ksum(points: Sequence[Vec], k: int) -> tuple[Vec, ...]:
    """All sums of exactly k elements (with repetition), deduplicated."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    dim = len(points[0]) if points else 0
    acc = {(0,) * dim}
    base = sorted({tuple(p) for p in points})
    for _ in range(k):
        acc = {vadd(a, p) for a in acc for p in base}
    return tuple(sorted(acc))


def region_le(mset: Multset, k: int, verify: bool = False) -> tuple[Vec, ...]:
    """Points of the cone dominating no sum of k multset elements.

    Enumerated over the polytope h_i(x) < k*h_i(n_i) (n_i the on-ray
    elements): any point beyond that bound dominates k*n_i.  With ``verify``
    the bound is asserted on a shell of excluded boundary points.
    """
    if k < 1:
        raise ValueError("region_le requires k >= 1")
    cone = mset.cone
    sums = ksum(mset.elements, k)
    ray_elems = mset.ray_elements
    bounds = [k * dot(cone.facet_normals[i], ray_elems[i]) for i in range(cone.dim)]
    out = []
    for x in _cone.enumerate_region(cone, bounds):
        if not any(_cone.cone_le(cone, a, x) for a in sums):
            out.append(x)
    if verify:
        wide = [b + dot(cone.facet_normals[i], ray_elems[i]) for i, b in enumerate(bounds)]
        inner = set(_cone.enumerate_region(cone, bounds))
        for x in _cone.enumerate_region(cone, wide):
            if x in inner:
                continue
            assert any(
                _cone.cone_le(cone, a, x) for a in sums
            ), f"boundary point {x} escapes the region bound"
    return tuple(out)


def region(mset: Multset, k: int, verify: bool = False) -> tuple[Vec, ...]:
    """Depth k-region: R_0 = {0}; R_k = R_{<=k} minus R_{<=k-1} minus {0}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    zero = (0,) * mset.cone.dim
    if k == 0:
        return (zero,)
    cur = set(region_le(mset, k, verify=verify))
    cur.discard(zero)
    if k >= 2:
        cur -= set(region_le(mset, k - 1))
    return tuple(sorted(cur))


def region_index(mset: Multset, x: Vec) -> int:
    """Index k with x in R_k: the least k such that x dominates no element
    of kM; 0 only for the apex."""
    if not any(x):
        return 0
    k = 1
    while True:
        if not any(_cone.cone_le(mset.cone, a, x) for a in ksum(mset.elements, k)):
            return k
        k += 1


def depth_of(semigroup) -> int:
    """Least q such that the depth (q+1)-region lies inside the semigroup.

    Equals the largest region index of a gap (0 when there are none): regions
    of higher index stay inside the semigroup by single-step descent.
    """
    mset = Multset(semigroup.cone, semigroup.minimals)
    if not semigroup.gaps:
        return 0
    q = max(region_index(mset, h) for h in semigroup.gaps)
    return q


def non_pf_witness(semigroup) -> Vec:
    """A gap h outside the pseudo-Frobenius set with h + k*s in S for every
    nonzero s in S and every k >= 2.

    Constructed by stripping one multset element from a deepest-region gap;
    the defining property is verified on generators for k = 2 and
    spot-checked for k = 3 (larger k follows by closure).
    """
    gaps = set(semigroup.gaps)
    pf = set(semigroup.pseudo_frobenius)
    if gaps == pf:
        raise PFEqualsGaps("every gap is pseudo-Frobenius")
    mset = Multset(semigroup.cone, semigroup.minimals)
    q = depth_of(semigroup)
    assert q >= 2, "depth below 2 is impossible when some gap is not pseudo-Frobenius"
    deepest = sorted(x for x in region(mset, q) if x in gaps)
    h_top = deepest[0]
    prev = set(region(mset, q - 1))
    witness = None
    for m in mset.elements:
        if _cone.cone_le(mset.cone, m, h_top) and vsub(h_top, m) in prev:
            witness = vsub(h_top, m)
            break
    assert witness is not None, "single-step descent failed"
    assert witness in gaps and witness not in pf
    for g in semigroup.minimal_generators:
        for k in (2, 3):
            shifted = witness
            for _ in range(k):
                shifted = vadd(shifted, g)
            assert semigroup.contains(shifted), (witness, g, k)
    return witness
