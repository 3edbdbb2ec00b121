"""Gluing of affine semigroups: verification of a proposed decomposition,
the connecting binomial, generator scaling, and the bundled counterexample
showing that gluing two Buchsbaum semigroups need not be Buchsbaum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import buchsbaum as _bb
from . import lattice
from . import presentation as _pres
from . import semigroup as _sg
from .errors import LatticeMismatch, NotInBoth, PreconditionFailed
from .lattice import Lattice, Vec, vadd, vscale
from .presentation import Binomial

MPD_PAPER_GENS = ((0, 7), (14, 0), (21, 0), (7, 7), (6, 12), (8, 16))
MPD_PAPER_PART1 = (0, 1, 2, 3)
MPD_PAPER_PART2 = (4, 5)
MPD_PAPER_D = (14, 28)
MPD_PAPER_S3 = ((0, 1), (2, 0), (3, 0), (1, 1))
MPD_PAPER_DSET_POINT = (15, 16)
MPD_PAPER_PF_POINT = (31, 48)


@dataclass(frozen=True)
class GluingWitness:
    gens: tuple[Vec, ...]
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    d_elem: Vec
    fact1: tuple[int, ...]
    fact2: tuple[int, ...]
    lattice_proof: Lattice


def check_gluing(
    gens: Sequence[Vec],
    part1: Sequence[int],
    part2: Sequence[int],
    d_elem: Vec,
) -> GluingWitness:
    """Verify that splitting the minimal generators along the two index sets
    is a gluing at ``d_elem``: the element factors over both parts and the
    groups of the parts intersect exactly in its integer multiples."""
    gens = tuple(tuple(g) for g in gens)
    p1 = tuple(sorted(int(i) for i in part1))
    p2 = tuple(sorted(int(i) for i in part2))
    if not p1 or not p2:
        raise PreconditionFailed("both parts must be nonempty")
    if sorted(p1 + p2) != list(range(len(gens))):
        raise PreconditionFailed("parts must partition the generator indices")
    for i, g in enumerate(gens):
        rest = gens[:i] + gens[i + 1 :]
        if _pres.has_factorization(rest, g):
            raise PreconditionFailed(f"generator {g} is redundant; input not minimal")
    d_elem = tuple(d_elem)
    gens1 = tuple(gens[i] for i in p1)
    gens2 = tuple(gens[i] for i in p2)
    f1 = _pres.factorizations(gens1, d_elem)
    f2 = _pres.factorizations(gens2, d_elem)
    if not f1 or not f2:
        which = [] if f1 else ["first"]
        if not f2:
            which.append("second")
        raise NotInBoth(f"{d_elem} does not factor over the {' and '.join(which)} part")
    inter = lattice.intersect(lattice.group_of(gens1), lattice.group_of(gens2))
    expected = lattice.hnf([d_elem])
    if inter != expected:
        raise LatticeMismatch(inter.basis)
    return GluingWitness(
        gens=gens,
        part1=p1,
        part2=p2,
        d_elem=d_elem,
        fact1=f1[0],
        fact2=f2[0],
        lattice_proof=inter,
    )


def rho(witness: GluingWitness) -> Binomial:
    """The one extra relation a gluing contributes: the two factorizations of
    the gluing element, written in the combined variable order (first part's
    variables, then the second part's)."""
    n1 = len(witness.part1)
    n2 = len(witness.part2)
    plus = tuple(witness.fact1) + (0,) * n2
    minus = (0,) * n1 + tuple(witness.fact2)
    return Binomial(plus=plus, minus=minus)


def scale(asg: _sg.AffineSemigroup, c: int) -> _sg.AffineSemigroup:
    """Multiply every generator by a positive integer; the semigroup ring is
    unchanged up to isomorphism, so presentation size, Buchsbaum and
    embedding-dimension verdicts, and the pseudo-Frobenius count carry over."""
    if c < 1:
        raise PreconditionFailed("scale factor must be a positive integer")
    return _sg.AffineSemigroup(gens=tuple(vscale(c, g) for g in asg.gens))


@dataclass(frozen=True)
class CounterexampleReport:
    steps: tuple[tuple[str, bool, str], ...]
    ok: bool
    verdict: str

    def failed_step(self) -> str | None:
        for name, passed, _ in self.steps:
            if not passed:
                return name
        return None


def reproduce_counterexample(
    gens: Sequence[Vec] = MPD_PAPER_GENS,
    part1: Sequence[int] = MPD_PAPER_PART1,
    part2: Sequence[int] = MPD_PAPER_PART2,
    d_elem: Vec = MPD_PAPER_D,
    small_gens: Sequence[Vec] = MPD_PAPER_S3,
    dset_point: Vec = MPD_PAPER_DSET_POINT,
    pf_point: Vec = MPD_PAPER_PF_POINT,
) -> CounterexampleReport:
    """Run the full glued-counterexample chain and report each step.

    The defaults reproduce the bundled instance: a gluing of a scaled
    Buchsbaum plane semigroup with a one-dimensional semigroup whose result
    has a doubled-shift point that is not pseudo-Frobenius, hence is not
    Buchsbaum.  Any failing step aborts the chain.
    """
    gens = tuple(tuple(g) for g in gens)
    steps: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str) -> bool:
        steps.append((name, ok, detail))
        return ok

    def report(ok: bool, verdict: str) -> CounterexampleReport:
        return CounterexampleReport(steps=tuple(steps), ok=ok, verdict=verdict)

    # (i) the proposed split is a gluing at d_elem
    try:
        witness = check_gluing(gens, part1, part2, d_elem)
        detail = f"factors {witness.fact1} | {witness.fact2}"
        okay = True
    except (NotInBoth, LatticeMismatch, PreconditionFailed) as exc:
        detail = str(exc)
        okay = False
    if not record("gluing_valid", okay, detail):
        return report(False, "aborted")

    # (ii) the small model is Buchsbaum with a single gap equal to its
    # pseudo-Frobenius set
    try:
        small = _sg.from_generators(small_gens)
        vb = _bb.is_buchsbaum(small)
        okay = (
            small.gaps == small.pseudo_frobenius
            and len(small.gaps) == 1
            and vb.verdict
        )
        detail = f"gaps {small.gaps}, pf {small.pseudo_frobenius}"
    except Exception as exc:  # validation errors count as step failure
        okay = False
        detail = str(exc)
    if not record("small_model_buchsbaum", okay, detail):
        return report(False, "aborted")

    # (iii) the first part is the small model scaled, hence Buchsbaum
    part1_gens = tuple(sorted(gens[i] for i in witness.part1))
    scaled = scale(_sg.AffineSemigroup(gens=tuple(small_gens)), 7)
    okay = scaled.gens == part1_gens
    if not record("part1_is_scaled_model", okay, f"{scaled.gens} vs {part1_gens}"):
        return report(False, "aborted")

    # (iv) the second part is one-dimensional, hence Buchsbaum
    part2_gens = tuple(gens[i] for i in witness.part2)
    rank = lattice.group_of(part2_gens).rank
    if not record("part2_one_dimensional", rank == 1, f"group rank {rank}"):
        return report(False, "aborted")

    # (v) the distinguished point lies in the doubled-shift set of the glued
    # semigroup (it is in the group, outside the semigroup, and two doubled
    # ray shifts land inside)
    glued = _sg.AffineSemigroup(gens=gens)
    rays = _sg.minimal_extremal_rays(glued)
    x = tuple(dset_point)
    in_group = lattice.member(glued.group, x)
    shifts = [vadd(x, vscale(2, a)) for a in rays]
    shift_hits = [s for s in shifts if glued.contains(s)]
    okay = (
        in_group
        and not glued.contains(x)
        and len(shift_hits) >= 2
        and _sg.d_set_member(glued, rays, x)
    )
    detail = f"rays {rays}, shifted points in S: {shift_hits}"
    if not record("dset_membership", okay, detail):
        return report(False, "aborted")

    # (vi) the same point is not pseudo-Frobenius: some generator shift
    # leaves the semigroup
    blocker = None
    for g in gens:
        if not glued.contains(vadd(x, g)):
            blocker = g
            break
    if not record("not_pseudo_frobenius", blocker is not None, f"blocking generator {blocker}"):
        return report(False, "aborted")

    # (vii) the cited pseudo-Frobenius point absorbs every generator shift
    y = tuple(pf_point)
    misses = [g for g in gens if not glued.contains(vadd(y, g))]
    if not record("pf_point_consistent", not misses, f"misses {misses}"):
        return report(False, "aborted")

    return report(
        True,
        "doubled-shift set differs from the pseudo-Frobenius set: not Buchsbaum",
    )
