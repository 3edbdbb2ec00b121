"""Decision layer: three cross-validated Buchsbaum criteria,
minimal-element deletion, maximal-embedding-dimension tests, the closed-form
presentation count, and the first/last Betti-number relation.

For a simplicial finite-complement semigroup of dimension > 1 the following
are provably equivalent, and the implementation treats disagreement as an
internal bug, never as a result:

* every gap is pseudo-Frobenius;
* the nonzero part of the semigroup is an ideal of its cone;
* the doubled-ray-shift set equals the pseudo-Frobenius set for every choice
  of extremal ray elements (checked on the minimal rays and on a bounded
  random sample of scaled ray sets).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import depth as _depth
from . import presentation as _pres
from . import semigroup as _sg
from .cone import SimplicialCone
from .errors import (
    InternalInconsistency,
    NonIntegralRelation,
    NotMinimalElement,
    PreconditionFailed,
)
from .lattice import Vec, vadd, vscale, vsub


@dataclass(frozen=True)
class BuchsbaumVerdict:
    by_gaps_eq_pf: bool
    by_ideal: bool
    by_dset_eq_pf: bool
    evidence: tuple[tuple[str, Vec], ...] = ()
    dimension_one: bool = False

    @property
    def verdict(self) -> bool:
        return self.by_gaps_eq_pf

    def __bool__(self) -> bool:
        return self.verdict


def is_buchsbaum(
    sg: _sg.CSemigroup, seed: int = 0, scale_samples: int = 3, max_scale: int = 3
) -> BuchsbaumVerdict:
    """Evaluate the three equivalent criteria and cross-check agreement.

    Dimension-one input short-circuits to True: every one-dimensional
    semigroup ring is Buchsbaum, and the gap criteria below only apply in
    higher dimension.
    """
    if sg.cone.dim == 1:
        return BuchsbaumVerdict(True, True, True, dimension_one=True)
    gaps = set(sg.gaps)
    pf = set(sg.pseudo_frobenius)
    evidence: list[tuple[str, Vec]] = []

    by_gaps = gaps == pf
    if not by_gaps:
        evidence.append(("gap_not_pseudo_frobenius", sorted(gaps - pf)[0]))

    # Ideal test: closure under addition reduces "s + c in S for all s in
    # S\{0}, c in C" to generators against the Hilbert basis of the cone.
    by_ideal = True
    for g in sg.minimal_generators:
        for h in sg.cone.hilbert:
            if not sg.contains(vadd(g, h)):
                by_ideal = False
                evidence.append(("ideal_violation", vadd(g, h)))
                break
        if not by_ideal:
            break

    by_dset = set(sg.d_set()) == pf
    if not by_dset:
        sym = set(sg.d_set()) ^ pf
        evidence.append(("dset_pf_difference", sorted(sym)[0]))
    rng = random.Random(seed)
    for _ in range(scale_samples):
        scaled = tuple(
            vscale(rng.randint(1, max_scale), a) for a in sg.min_ray_elements
        )
        agrees = set(sg.d_set(scaled)) == pf
        if agrees != by_dset:
            raise InternalInconsistency(
                f"doubled-shift criterion flipped for ray elements {scaled}"
            )

    if not (by_gaps == by_ideal == by_dset):
        raise InternalInconsistency(
            f"criteria disagree: gaps=pf {by_gaps}, ideal {by_ideal}, dset=pf {by_dset}"
        )
    return BuchsbaumVerdict(by_gaps, by_ideal, by_dset, evidence=tuple(evidence))


def remove_minimal(sg: _sg.CSemigroup, x: Vec) -> _sg.CSemigroup:
    """Delete one minimal element; the result is again a finite-complement
    semigroup (closure is automatic for minimal elements)."""
    x = tuple(x)
    if x not in set(sg.minimals):
        raise NotMinimalElement(f"{x} is not a minimal nonzero element")
    return _sg.CSemigroup(cone=sg.cone, gaps=sg.gaps + (x,))


def is_med(sg: _sg.CSemigroup, ray_elements: Sequence[Vec] | None = None) -> bool:
    """Maximal embedding dimension: the non-ray minimal generators are
    exactly the nonzero Apery points of the ray elements."""
    elems = ray_elements if ray_elements is not None else sg.min_ray_elements
    msg_rest = set(sg.minimal_generators) - set(tuple(a) for a in elems)
    ap_rest = {p for p in _sg.apery(sg, elems) if any(p)}
    return msg_rest == ap_rest


def med_multset_certificate(cone: SimplicialCone, multset) -> dict | None:
    """For each unordered pair of non-ray multset elements, the lex-least
    (ray element, multset element) pair witnessing that their sum minus the
    ray element still dominates the multset; None when some pair has no
    witness."""
    mset = multset if isinstance(multset, _depth.Multset) else _depth.Multset(cone, tuple(multset))
    rays = mset.ray_elements
    rest = sorted(set(mset.elements) - set(rays))
    cert: dict = {}
    for i, mi in enumerate(rest):
        for mj in rest[i:]:
            found = None
            for nk in rays:
                v = vsub(vadd(mi, mj), nk)
                for m in mset.elements:
                    if cone.le(m, v):
                        cand = (nk, m)
                        if found is None or cand < found:
                            found = cand
                        break
            if found is None:
                return None
            cert[(mi, mj)] = found
    return cert


def is_med_multset(cone: SimplicialCone, multset) -> bool:
    """Maximal embedding dimension decided directly on the multset, without
    building the semigroup."""
    return med_multset_certificate(cone, multset) is not None


def mu_formula(sg: _sg.CSemigroup) -> int:
    """Closed-form presentation count (m(m+1) + d(d-1)g)/2 for Buchsbaum
    semigroups of maximal embedding dimension, with m the number of non-ray
    minimal generators and g the genus."""
    if not is_buchsbaum(sg).verdict:
        raise PreconditionFailed("semigroup is not Buchsbaum")
    if not is_med(sg):
        raise PreconditionFailed("semigroup does not have maximal embedding dimension")
    d = sg.cone.dim
    m = len(sg.minimal_generators) - d
    total = m * (m + 1) + d * (d - 1) * sg.genus
    assert total % 2 == 0
    return total // 2


def betti_relation(sg: _sg.CSemigroup, mu_value: int | None = None) -> bool:
    """Check that the pseudo-Frobenius count equals
    (2*mu - (n-d)(n-d+1)) / (d(d-1)); the division must be exact."""
    d = sg.cone.dim
    if d < 2:
        raise PreconditionFailed("relation needs dimension at least 2")
    if not is_buchsbaum(sg).verdict:
        raise PreconditionFailed("semigroup is not Buchsbaum")
    if not is_med(sg):
        raise PreconditionFailed("semigroup does not have maximal embedding dimension")
    n = len(sg.minimal_generators)
    mu = _pres.mu(sg) if mu_value is None else mu_value
    num = 2 * mu - (n - d) * (n - d + 1)
    den = d * (d - 1)
    if num % den != 0:
        raise NonIntegralRelation(f"(2*{mu} - ...) not divisible by {den}")
    return len(sg.pseudo_frobenius) == num // den
