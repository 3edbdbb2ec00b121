"""Finite-complement semigroups of a simplicial integer cone, plus plain
affine semigroups with factorization-based membership.

The canonical representation of a finite-complement semigroup is the pair
(cone, gaps): every invariant here (minimal generators, minimal elements,
pseudo-Frobenius elements, Apery sets) is a finite computation over the gap
set and bounded cone regions.  Generator input is converted at construction
through a certified region scan.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import cone as _cone
from . import depth as _depth
from . import lattice
from . import presentation as _pres
from .cone import SimplicialCone
from .errors import (
    NotClosed,
    NotInCone,
    NotVerified,
    RayMismatch,
    SemigroupError,
)
from .lattice import Vec, vadd, vscale, vsub


def minimals_under(cone: SimplicialCone, points: Iterable[Vec]) -> tuple[Vec, ...]:
    """Minimal elements of a finite point set under the cone order."""
    pts = sorted({tuple(p) for p in points})
    out = []
    for p in pts:
        if not any(q != p and cone.le(q, p) for q in pts):
            out.append(p)
    return tuple(out)


def maximals_under(cone: SimplicialCone, points: Iterable[Vec]) -> tuple[Vec, ...]:
    pts = sorted({tuple(p) for p in points})
    out = []
    for p in pts:
        if not any(q != p and cone.le(p, q) for q in pts):
            out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class CSemigroup:
    """Semigroup C \\ gaps (with 0), for a finite gap set of the cone C."""

    cone: SimplicialCone
    gaps: tuple[Vec, ...]

    def __post_init__(self):
        gaps = tuple(sorted({tuple(h) for h in self.gaps}))
        object.__setattr__(self, "gaps", gaps)
        for h in gaps:
            if not any(h):
                raise NotInCone("0 cannot be a gap")
            if not self.cone.contains(h):
                raise NotInCone(f"gap {h} outside the cone")

    @cached_property
    def _gapset(self) -> frozenset:
        return frozenset(self.gaps)

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def contains(self, x: Vec) -> bool:
        return self.cone.contains(x) and tuple(x) not in self._gapset

    def __contains__(self, x: Vec) -> bool:
        return self.contains(x)

    @cached_property
    def min_ray_elements(self) -> tuple[Vec, ...]:
        """Least semigroup element on each extremal ray, in ray order."""
        out = []
        for ray in self.cone.rays:
            q = 1
            while q <= self.genus + 1:
                cand = vscale(q, ray)
                if self.contains(cand):
                    out.append(cand)
                    break
                q += 1
            else:
                raise AssertionError(f"no semigroup element on ray {ray}")
        return tuple(out)

    @cached_property
    def minimal_generators(self) -> tuple[Vec, ...]:
        return minimal_generators(self)

    @cached_property
    def minimals(self) -> tuple[Vec, ...]:
        """Minimal nonzero semigroup elements under the cone order."""
        return minimals_under(self.cone, self.minimal_generators)

    @cached_property
    def pseudo_frobenius(self) -> tuple[Vec, ...]:
        return pseudo_frobenius(self)

    @cached_property
    def group(self) -> lattice.Lattice:
        return lattice.group_of(self.minimal_generators)

    @cached_property
    def depth(self) -> int:
        return _depth.depth_of(self)

    def apery(self, ray_elements: Sequence[Vec] | None = None) -> tuple[Vec, ...]:
        return apery(self, ray_elements)

    def d_set(self, ray_elements: Sequence[Vec] | None = None) -> tuple[Vec, ...]:
        return d_set(self, ray_elements)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def from_cone_and_gaps(cone: SimplicialCone, gaps: Iterable[Vec]) -> CSemigroup:
    """Validating constructor: rejects gap sets whose complement is not
    closed under addition, exhibiting a violating decomposition."""
    sg = CSemigroup(cone=cone, gaps=tuple(gaps))
    gapset = sg._gapset
    for h in sg.gaps:
        for u in _cone.interval(cone, h):
            if not any(u) or u == h:
                continue
            v = vsub(h, u)
            if u not in gapset and v not in gapset:
                raise NotClosed(h, u, v)
    return sg


def from_multset_ideal(cone: SimplicialCone, multset: Iterable[Vec]) -> CSemigroup:
    """Semigroup (M + C) plus 0 for a multset M; its gaps are the nonzero
    cone points dominating no element of M, all of which lie under the
    on-ray bounds of M."""
    mset = multset if isinstance(multset, _depth.Multset) else _depth.Multset(cone, tuple(multset))
    ray_elems = mset.ray_elements
    bounds = [lattice.dot(cone.facet_normals[i], ray_elems[i]) for i in range(cone.dim)]
    gaps = []
    for x in _cone.enumerate_region(cone, bounds):
        if not any(x):
            continue
        if not any(_cone.cone_le(cone, m, x) for m in mset.elements):
            gaps.append(x)
    return CSemigroup(cone=cone, gaps=tuple(gaps))


def from_downset_complement(cone: SimplicialCone, antichain: Iterable[Vec]) -> CSemigroup:
    """Semigroup whose gaps are the down-set of a finite antichain (minus 0)."""
    pts = sorted({tuple(a) for a in antichain})
    from .errors import NotAntichain

    if any(not any(a) for a in pts):
        raise NotAntichain("0 cannot belong to the antichain")
    if not _cone.is_antichain(cone, pts):
        raise NotAntichain(f"{pts} is not an antichain of the cone order")
    gaps = tuple(x for x in _cone.downset(cone, pts) if any(x))
    return CSemigroup(cone=cone, gaps=gaps)


def from_generators(gens: Iterable[Vec], k_max: int = 32) -> CSemigroup:
    """Certify that the semigroup generated by ``gens`` has finite complement
    in its cone and return it; raises NotVerified otherwise.

    Necessary pre-checks (group of the generators is the full lattice, and
    each ray-restricted submonoid has coprime multipliers) reject impossible
    inputs outright; then depth regions of the minimal generators are scanned
    for membership until one region lies fully inside the semigroup, which
    certifies every deeper region by single-step descent.
    """
    pts = tuple(sorted({tuple(int(x) for x in g) for g in gens if any(g)}))
    if not pts:
        raise NotVerified(k_max, "no nonzero generators", proven_negative=True)
    cone = _cone.from_generators(pts)
    d = cone.dim
    if lattice.group_of(pts) != lattice.identity(d):
        raise NotVerified(
            k_max,
            "generators span a proper sublattice of Z^d",
            proven_negative=True,
        )
    for i, ray in enumerate(cone.rays):
        mults = []
        for g in pts:
            if all(
                lattice.dot(cone.facet_normals[j], g) == 0 for j in range(d) if j != i
            ):
                mults.append(_cone._ray_multiplier(ray, g))
        g_all = 0
        for m in mults:
            g_all = lattice.gcd(g_all, m)
        if g_all != 1:
            raise NotVerified(
                k_max,
                f"generators on ray {ray} have multiplier gcd {g_all}",
                proven_negative=True,
            )
    mset = _depth.Multset(cone, minimals_under(cone, pts))
    gaps: list[Vec] = []
    for k in range(1, k_max + 1):
        missing = [
            x for x in _depth.region(mset, k) if not _pres.has_factorization(pts, x)
        ]
        if not missing:
            return CSemigroup(cone=cone, gaps=tuple(gaps))
        gaps.extend(missing)
    raise NotVerified(k_max, "region scan exhausted without a full region inside")


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------


def contains(semigroup, x: Vec) -> bool:
    """Membership for either semigroup flavor."""
    return semigroup.contains(tuple(x))


def _validated_ray_elements(sg: CSemigroup, ray_elements: Sequence[Vec] | None):
    if ray_elements is None:
        return sg.min_ray_elements
    elems = _cone.match_ray_elements(sg.cone, ray_elements)
    for a in elems:
        if not sg.contains(a):
            raise RayMismatch(f"ray element {a} is not in the semigroup")
    return elems


def _minimal_shift_vectors(sg: CSemigroup, rep: Vec, ray_elements) -> list[Vec]:
    """Minimal k in N^d with rep + sum k_i a_i in the semigroup.

    The complement {k : shifted point not in S} is downward closed and has at
    most `genus` points, so a breadth-first search over it terminates.
    """
    d = sg.cone.dim
    zero = (0,) * d

    def shifted(k: Vec) -> Vec:
        p = rep
        for c, a in zip(k, ray_elements):
            p = vadd(p, vscale(c, a))
        return p

    minimal: list[Vec] = []
    seen = {zero}
    queue = deque([zero])
    while queue:
        k = queue.popleft()
        if sg.contains(shifted(k)):
            if all(
                not sg.contains(shifted(tuple(c - (1 if j == i else 0) for j, c in enumerate(k))))
                for i in range(d)
                if k[i] > 0
            ):
                minimal.append(k)
            continue
        for i in range(d):
            child = tuple(c + (1 if j == i else 0) for j, c in enumerate(k))
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return sorted(minimal)


def apery_classes(
    sg: CSemigroup, ray_elements: Sequence[Vec] | None = None
) -> dict[Vec, tuple[Vec, ...]]:
    """Apery set split by residue class modulo the ray-element group: class
    representatives are the cone-level Apery points, and each class holds the
    minimal semigroup elements of that class under the cone order."""
    elems = _validated_ray_elements(sg, ray_elements)
    ca = _cone.cone_apery(sg.cone, elems)
    out: dict[Vec, tuple[Vec, ...]] = {}
    for rep in ca.elements:
        shifts = _minimal_shift_vectors(sg, rep, elems)
        pts = []
        for k in shifts:
            p = rep
            for c, a in zip(k, elems):
                p = vadd(p, vscale(c, a))
            pts.append(p)
        out[rep] = tuple(sorted(pts))
    return out


def apery(sg: CSemigroup, ray_elements: Sequence[Vec] | None = None) -> tuple[Vec, ...]:
    """Semigroup elements s with s - a outside the semigroup for every ray
    element a."""
    classes = apery_classes(sg, ray_elements)
    out: set[Vec] = set()
    for pts in classes.values():
        out.update(pts)
    return tuple(sorted(out))


def minimal_generators(sg: CSemigroup) -> tuple[Vec, ...]:
    """Unique minimal generating set: Apery points of the minimal ray
    elements plus the ray elements themselves, filtered by irreducibility."""
    elems = sg.min_ray_elements
    candidates = {p for p in apery(sg, elems) if any(p)}
    candidates.update(elems)
    out = []
    for s in sorted(candidates):
        reducible = False
        for u in _cone.interval(sg.cone, s):
            if not any(u) or u == s:
                continue
            if sg.contains(u) and sg.contains(vsub(s, u)):
                reducible = True
                break
        if not reducible:
            out.append(s)
    return tuple(out)


def minimals(sg: CSemigroup) -> tuple[Vec, ...]:
    """Minimal nonzero semigroup elements under the cone order."""
    return sg.minimals


def pseudo_frobenius(sg: CSemigroup) -> tuple[Vec, ...]:
    """Gaps h with h + s in the semigroup for every nonzero s; testing the
    minimal generators suffices by closure."""
    gens = sg.minimal_generators
    return tuple(h for h in sg.gaps if all(sg.contains(vadd(h, g)) for g in gens))


def d_set(sg: CSemigroup, ray_elements: Sequence[Vec] | None = None) -> tuple[Vec, ...]:
    """Group elements outside the semigroup whose shifts by two doubled ray
    elements in different ray directions both land inside.  Such points are
    necessarily gaps, so only the gap set is scanned."""
    elems = _validated_ray_elements(sg, ray_elements)
    doubled = [vscale(2, a) for a in elems]
    group = sg.group
    out = []
    for h in sg.gaps:
        if not lattice.member(group, h):
            continue
        hits = [i for i, da in enumerate(doubled) if sg.contains(vadd(h, da))]
        if len(hits) >= 2:
            out.append(h)
    return tuple(out)


# ---------------------------------------------------------------------------
# Plain affine semigroups (membership by factorization search)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineSemigroup:
    """Finitely generated submonoid of N^d; no finiteness of the complement
    is assumed, so membership runs a bounded factorization search."""

    gens: tuple[Vec, ...]

    def __post_init__(self):
        gens = tuple(sorted({tuple(int(x) for x in g) for g in self.gens if any(g)}))
        if not gens:
            raise SemigroupError("at least one nonzero generator required")
        d = len(gens[0])
        for g in gens:
            if len(g) != d or any(x < 0 for x in g):
                raise SemigroupError(f"generator {g} invalid for N^{d}")
        object.__setattr__(self, "gens", gens)

    @property
    def dim(self) -> int:
        return len(self.gens[0])

    @cached_property
    def group(self) -> lattice.Lattice:
        return lattice.group_of(self.gens)

    def contains(self, x: Vec) -> bool:
        return _pres.has_factorization(self.gens, tuple(x))

    def __contains__(self, x: Vec) -> bool:
        return self.contains(x)

    @cached_property
    def minimal_generators(self) -> tuple[Vec, ...]:
        kept = list(self.gens)
        changed = True
        while changed:
            changed = False
            for i, g in enumerate(kept):
                others = kept[:i] + kept[i + 1 :]
                if others and _pres.has_factorization(others, g):
                    kept.pop(i)
                    changed = True
                    break
        return tuple(sorted(kept))


def minimal_extremal_rays(asg: AffineSemigroup, max_multiple: int = 1000) -> tuple[Vec, ...]:
    """Least semigroup element on each extremal ray of the cone spanned by
    the generators; the scan is capped since no finiteness is guaranteed."""
    cone = _cone.from_generators(asg.gens)
    out = []
    for ray in cone.rays:
        for q in range(1, max_multiple + 1):
            cand = vscale(q, ray)
            if asg.contains(cand):
                out.append(cand)
                break
        else:
            raise SemigroupError(f"no semigroup element on ray {ray} up to {max_multiple}")
    return tuple(out)


def d_set_member(
    asg: AffineSemigroup, ray_elements: Sequence[Vec], x: Vec
) -> bool:
    """Point query for the doubled-ray-shift criterion on a plain affine
    semigroup (full enumeration needs a finite gap set, which may not exist)."""
    x = tuple(x)
    if not lattice.member(asg.group, x):
        return False
    if asg.contains(x):
        return False
    hits = 0
    for a in ray_elements:
        if asg.contains(vadd(x, vscale(2, a))):
            hits += 1
            if hits >= 2:
                return True
    return False
