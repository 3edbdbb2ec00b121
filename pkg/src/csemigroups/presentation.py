"""Factorizations, factorization graphs, toric-ideal generators by binomial
elimination, and minimal presentations.

The defining ideal of a semigroup with generators a_1..a_n is the kernel of
x_i -> t^{a_i}.  Its binomial generators are computed by a Buchberger loop
over pure-difference binomials in the n semigroup variables plus d degree
variables, under a block order that eliminates the degree block; coefficients
are never materialized (everything stays a difference of two monomials).
The presentation itself is then read off degree by degree from the connected
components of the factorization graphs.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ResourceLimit
from .lattice import Vec, is_zero

Exponents = tuple[int, ...]

DEFAULT_MAX_BINOMIALS = 100_000
_CAP_ENV = "CSEMIGROUPS_MAX_BINOMIALS"


def resource_cap() -> int:
    raw = os.environ.get(_CAP_ENV)
    return int(raw) if raw else DEFAULT_MAX_BINOMIALS


def degree_of(gens: Sequence[Vec], u: Exponents) -> Vec:
    """Semigroup degree of an exponent vector: sum of u_i * a_i."""
    d = len(gens[0])
    return tuple(sum(c * g[k] for c, g in zip(u, gens)) for k in range(d))


def factorizations(gens: Sequence[Vec], target: Vec) -> tuple[Exponents, ...]:
    """All u in N^n with sum u_i a_i = target (empty when target is not in
    the semigroup).  Bounded recursion: generators live in N^d, so every
    partial remainder must stay componentwise nonnegative."""
    gens = [tuple(g) for g in gens]
    n = len(gens)
    target = tuple(target)
    if any(t < 0 for t in target):
        return ()
    out: list[Exponents] = []
    acc = [0] * n

    def rec(i: int, rem: Vec) -> None:
        if i == n:
            if is_zero(rem):
                out.append(tuple(acc))
            return
        g = gens[i]
        cap = min((r // c for r, c in zip(rem, g) if c > 0), default=None)
        if cap is None:
            # zero generator would be unbounded; constructors forbid it
            raise ValueError("zero generator in factorization search")
        for c in range(cap + 1):
            acc[i] = c
            rec(i + 1, tuple(r - c * gc for r, gc in zip(rem, g)))
        acc[i] = 0

    rec(0, target)
    return tuple(sorted(out))


def has_factorization(gens: Sequence[Vec], target: Vec) -> bool:
    """Existence-only variant of :func:`factorizations` with early exit."""
    gens = [tuple(g) for g in gens]
    n = len(gens)
    target = tuple(target)
    if any(t < 0 for t in target):
        return False

    def rec(i: int, rem: Vec) -> bool:
        if is_zero(rem):
            return True
        if i == n:
            return False
        g = gens[i]
        cap = min((r // c for r, c in zip(rem, g) if c > 0), default=0)
        for c in range(cap, -1, -1):
            if rec(i + 1, tuple(r - c * gc for r, gc in zip(rem, g))):
                return True
        return False

    return rec(0, target)


def graph_components(facts: Sequence[Exponents]) -> tuple[tuple[Exponents, ...], ...]:
    """Connected components of the graph on same-degree factorizations with
    edges between factorizations whose supports intersect."""
    facts = sorted(set(facts))
    parent = list(range(len(facts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    anchor: dict[int, int] = {}
    for idx, u in enumerate(facts):
        for var, c in enumerate(u):
            if c:
                if var in anchor:
                    union(anchor[var], idx)
                else:
                    anchor[var] = idx
    groups: dict[int, list[Exponents]] = {}
    for idx, u in enumerate(facts):
        groups.setdefault(find(idx), []).append(u)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values()))


@dataclass(frozen=True)
class Binomial:
    """x^plus - x^minus with disjoint supports after content stripping."""

    plus: Exponents
    minus: Exponents


# ---------------------------------------------------------------------------
# Binomial Buchberger elimination
# ---------------------------------------------------------------------------
#
# Monomials over the d degree variables plus n semigroup variables are packed
# into single integers, one fixed-width field per variable: divisibility,
# lcm, gcd and strip become a handful of big-int mask operations.  The block
# order (degree block dominant, graded-lex inside each block) is evaluated on
# unpacked tuples.  Pair bookkeeping uses the Gebauer-Moeller criteria.

_FIELD_BITS = 16
_FIELD_LIMIT = 1 << (_FIELD_BITS - 1)


class _Monomials:
    """Packed exponent-vector arithmetic for a fixed variable count."""

    def __init__(self, nvars: int, d: int):
        self.nvars = nvars
        self.d = d
        w = _FIELD_BITS
        self.guards = sum(1 << (w * k + w - 1) for k in range(nvars))
        self.field = (1 << w) - 1
        self.tmask = (1 << (w * d)) - 1

    def pack(self, exps) -> int:
        m = 0
        for k, e in enumerate(exps):
            if e >= _FIELD_LIMIT:
                raise ResourceLimit(e, "exponent exceeds the packed field width")
            m |= e << (_FIELD_BITS * k)
        return m

    def unpack(self, m: int) -> Exponents:
        return tuple(
            (m >> (_FIELD_BITS * k)) & self.field for k in range(self.nvars)
        )

    def divides(self, small: int, big: int) -> bool:
        return ((big | self.guards) - small) & self.guards == self.guards

    def _ge_fields(self, a: int, b: int) -> int:
        # full-width mask of the fields where a_k >= b_k
        g = (((a | self.guards) - b) & self.guards) >> (_FIELD_BITS - 1)
        return g * self.field

    def lcm(self, a: int, b: int) -> int:
        f = self._ge_fields(a, b)
        return (a & f) | (b & ~f)

    def gcd(self, a: int, b: int) -> int:
        f = self._ge_fields(a, b)
        return (b & f) | (a & ~f)

    def key(self, m: int):
        e = self.unpack(m)
        return (sum(e[: self.d]), e[: self.d], sum(e[self.d :]), e[self.d :])

    def degree(self, m: int) -> int:
        return sum(self.unpack(m))


class _Eliminator:
    def __init__(self, gens: Sequence[Vec], cap: int):
        self.d = len(gens[0])
        self.n = len(gens)
        self.cap = cap
        self.mono = _Monomials(self.d + self.n, self.d)
        self.basis: list[tuple[int, int]] = []  # (lead, tail) packed
        self.lead_deg: list[int] = []
        # reduction uses only the antichain of minimal leads, degree-sorted
        self.reducers: list[tuple[int, int, int]] = []  # (lead_deg, lead, tail)
        self.pairs: set[tuple[int, int]] = set()
        self.pair_heap: list = []
        for i, g in enumerate(gens):
            lead = self.mono.pack(tuple(g) + (0,) * self.n)
            tail = self.mono.pack(
                (0,) * self.d + tuple(1 if j == i else 0 for j in range(self.n))
            )
            self._add(lead, tail)

    # -- binomial plumbing --------------------------------------------------

    def _orient(self, a: int, b: int):
        if a == b:
            return None
        return (a, b) if self.mono.key(a) > self.mono.key(b) else (b, a)

    def _strip(self, a: int, b: int):
        c = self.mono.gcd(a, b)
        return (a - c, b - c) if c else (a, b)

    def _normalize(self, a: int, b: int):
        ab = self._orient(a, b)
        if ab is None:
            return None
        return self._strip(*ab)

    def _reduce(self, a: int, b: int):
        """Full normal form of the difference of two monomials (None if 0)."""
        mono = self.mono
        reducers = self.reducers
        divides = mono.divides
        cur = self._normalize(a, b)
        while cur is not None:
            a, b = cur
            deg_a = mono.degree(a)
            hit = False
            for deg, lead, tail in reducers:
                if deg > deg_a:
                    break
                if divides(lead, a):
                    cur = self._normalize(a - lead + tail, b)
                    hit = True
                    break
            if hit:
                if cur is None:
                    return None
                continue
            deg_b = mono.degree(b)
            for deg, lead, tail in reducers:
                if deg > deg_b:
                    break
                if divides(lead, b):
                    cur = self._normalize(a, b - lead + tail)
                    hit = True
                    break
            if not hit:
                return a, b
            if cur is None:
                return None
        return None

    # -- Gebauer-Moeller pair update ----------------------------------------

    def _add(self, lead: int, tail: int) -> None:
        mono = self.mono
        t = len(self.basis)
        lt = lead
        lcm_with = {}
        for i in range(t):
            lcm_with[i] = mono.lcm(self.basis[i][0], lt)
        # M criterion: drop (i,t) when another new pair's lcm properly divides
        survivors = []
        for i in range(t):
            li = lcm_with[i]
            if any(
                lcm_with[j] != li and mono.divides(lcm_with[j], li)
                for j in range(t)
                if j != i
            ):
                continue
            survivors.append(i)
        # F criterion: one representative per lcm; a coprime representative
        # kills its whole group (its S-pair reduces to zero).
        groups: dict[int, list[int]] = {}
        for i in survivors:
            groups.setdefault(lcm_with[i], []).append(i)
        fresh = set()
        for lcm_val, members in groups.items():
            if any(mono.gcd(self.basis[i][0], lt) == 0 for i in members):
                continue
            fresh.add((min(members), t))
        # B criterion on pending old pairs
        stale = []
        for (i, j) in self.pairs:
            lij = mono.lcm(self.basis[i][0], self.basis[j][0])
            if (
                mono.divides(lt, lij)
                and lcm_with[i] != lij
                and lcm_with[j] != lij
            ):
                stale.append((i, j))
        for p in stale:
            self.pairs.discard(p)
        for p in fresh:
            self.pairs.add(p)
            lcm_val = lcm_with[p[0]]
            heapq.heappush(self.pair_heap, (mono.key(lcm_val), p))
        self.basis.append((lead, tail))
        deg = mono.degree(lead)
        self.lead_deg.append(deg)
        self.reducers = [r for r in self.reducers if not mono.divides(lead, r[1])]
        lo, hi = 0, len(self.reducers)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.reducers[mid][0] <= deg:
                lo = mid + 1
            else:
                hi = mid
        self.reducers.insert(lo, (deg, lead, tail))
        if len(self.basis) > self.cap:
            raise ResourceLimit(
                len(self.basis),
                f"binomial basis exceeded the cap while eliminating {self.d} degree variables",
            )

    def run(self) -> None:
        mono = self.mono
        # normal selection: smallest lcm first; entries invalidated by the
        # B criterion are skipped on pop
        while self.pair_heap:
            _, (i, j) = heapq.heappop(self.pair_heap)
            if (i, j) not in self.pairs:
                continue
            self.pairs.discard((i, j))
            lead_i, tail_i = self.basis[i]
            lead_j, tail_j = self.basis[j]
            lcm = mono.lcm(lead_i, lead_j)
            nf = self._reduce(lcm - lead_i + tail_i, lcm - lead_j + tail_j)
            if nf is not None:
                self._add(*nf)

    def eliminated(self) -> list[Binomial]:
        out = set()
        mono = self.mono
        d = self.d
        for lead, tail in self.basis:
            if lead & mono.tmask or tail & mono.tmask:
                continue
            out.add(
                Binomial(plus=mono.unpack(lead)[d:], minus=mono.unpack(tail)[d:])
            )
        return sorted(out, key=lambda b: (b.plus, b.minus))


def toric_generators(gens: Sequence[Vec], cap: int | None = None) -> tuple[Binomial, ...]:
    """Binomial generating set of the defining ideal of <gens>, obtained by
    eliminating the degree variables from the relations x_i - t^{a_i}."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return ()
    if any(not any(g) or any(x < 0 for x in g) for g in gens):
        raise ValueError("generators must be nonzero vectors in N^d")
    elim = _Eliminator(gens, cap if cap is not None else resource_cap())
    elim.run()
    return tuple(elim.eliminated())


# ---------------------------------------------------------------------------
# Minimal presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Pairs of factorizations generating the kernel congruence, with one
    tree of pairs per disconnected degree."""

    generators: tuple[Vec, ...]
    pairs: tuple[tuple[Exponents, Exponents], ...]
    mu: int
    betti_degrees: tuple[Vec, ...]

    def by_degree(self):
        """Pairs grouped by semigroup degree, in degree order."""
        grouped: dict[Vec, list] = {}
        for u, v in self.pairs:
            grouped.setdefault(degree_of(self.generators, u), []).append((u, v))
        return tuple((deg, tuple(grouped[deg])) for deg in sorted(grouped))


def _resolve_generators(source) -> tuple[Vec, ...]:
    if hasattr(source, "minimal_generators"):
        mg = source.minimal_generators
        return tuple(mg() if callable(mg) else mg)
    return tuple(tuple(g) for g in source)


def minimal_presentation(source, cap: int | None = None) -> Presentation:
    """Minimal presentation read off the factorization graphs of the degrees
    of a binomial generating set: a degree with c components contributes
    c - 1 pairs joining lexicographically-least representatives."""
    gens = _resolve_generators(source)
    if not gens:
        return Presentation(generators=(), pairs=(), mu=0, betti_degrees=())
    candidates = sorted({degree_of(gens, b.plus) for b in toric_generators(gens, cap)})
    pairs: list[tuple[Exponents, Exponents]] = []
    betti: list[Vec] = []
    for deg in candidates:
        comps = graph_components(factorizations(gens, deg))
        if len(comps) <= 1:
            continue
        reps = sorted(comp[0] for comp in comps)
        root = reps[0]
        pairs.extend((root, rep) for rep in reps[1:])
        betti.append(deg)
    return Presentation(
        generators=gens,
        pairs=tuple(pairs),
        mu=len(pairs),
        betti_degrees=tuple(betti),
    )


def mu(source, cap: int | None = None) -> int:
    """Cardinality of a minimal presentation (= minimal number of binomial
    generators of the defining ideal)."""
    return minimal_presentation(source, cap).mu
