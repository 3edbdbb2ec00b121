"""Exact integer linear algebra: Hermite-normal-form lattices, membership,
intersection, and integer kernels.

All arithmetic is arbitrary-precision Python ints.  Vectors are plain tuples
of ints; a :class:`Lattice` stores its canonical row-style HNF basis, so two
lattices are equal iff their bases are structurally equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vec = tuple[int, ...]


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(k: int, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def dot(a: Vec, b: Vec) -> int:
    return sum(x * y for x, y in zip(a, b))


def is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def xgcd(a: int, b: int):
    # Invariants: x*a + y*b == g and next_x*a + next_y*b == next_g.
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def content(a: Vec) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def primitive(a: Vec) -> Vec:
    """a divided by the gcd of its coordinates; zero stays zero."""
    g = content(a)
    if g in (0, 1):
        return tuple(a)
    return tuple(x // g for x in a)


@dataclass(frozen=True)
class Lattice:
    """Subgroup of Z^dim with basis rows in canonical Hermite normal form."""

    dim: int
    basis: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def member(self, v: Vec) -> bool:
        return member(self, v)

    def __contains__(self, v: Vec) -> bool:
        return member(self, v)


def _pivot_col(row: Sequence[int], width: int) -> int:
    for j in range(width):
        if row[j]:
            return j
    return -1


def _echelon(rows_in: Iterable[Sequence[int]], width: int):
    """Integer row echelon via xgcd elimination.

    Pivoting is driven by the first ``width`` columns only; extra columns ride
    along for kernel bookkeeping.  Returns (pivot rows sorted by pivot column,
    rows whose first ``width`` columns vanished).
    """
    by_pivot: dict[int, list[int]] = {}
    zeroed: list[list[int]] = []
    for r in rows_in:
        vec = list(r)
        j = _pivot_col(vec, width)
        while j != -1:
            row = by_pivot.get(j)
            if row is None:
                by_pivot[j] = vec
                break
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(len(vec)):
                    vec[jj] -= q * row[jj]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                for jj in range(len(vec)):
                    aa, bb = row[jj], vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = -bg * aa + ag * bb
            j = _pivot_col(vec, width)
        else:
            zeroed.append(vec)
    pivot_rows = [by_pivot[j] for j in sorted(by_pivot)]
    return pivot_rows, zeroed


def _normalize_hnf(pivot_rows: list[list[int]], width: int) -> list[list[int]]:
    """Echelon rows -> canonical HNF: positive pivots, reduced above-entries."""
    for i, row in enumerate(pivot_rows):
        j = _pivot_col(row, width)
        if row[j] < 0:
            for jj in range(len(row)):
                row[jj] = -row[jj]
        for k in range(i):
            above = pivot_rows[k]
            q = above[j] // row[j]
            if q:
                for jj in range(len(row)):
                    above[jj] -= q * row[jj]
    return pivot_rows


def hnf(rows: Iterable[Vec]) -> Lattice:
    """Canonical HNF basis of the integer row span."""
    rows = [tuple(r) for r in rows]
    dims = {len(r) for r in rows}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed vector lengths {sorted(dims)}")
    dim = dims.pop() if dims else 0
    pivot_rows, _ = _echelon(rows, dim)
    basis = _normalize_hnf(pivot_rows, dim)
    return Lattice(dim=dim, basis=tuple(tuple(r) for r in basis))


def group_of(gens: Iterable[Vec]) -> Lattice:
    """Group generated inside Z^d by the given points (differences allowed)."""
    return hnf(gens)


def identity(dim: int) -> Lattice:
    rows = []
    for i in range(dim):
        row = [0] * dim
        row[i] = 1
        rows.append(tuple(row))
    return Lattice(dim=dim, basis=tuple(rows))


def member(lat: Lattice, v: Vec) -> bool:
    """True iff v is an integer combination of the basis rows."""
    if len(v) != lat.dim:
        raise DimensionMismatch(f"vector length {len(v)} != lattice dim {lat.dim}")
    vec = list(v)
    pivots = {_pivot_col(row, lat.dim): row for row in lat.basis}
    for j in range(lat.dim):
        if vec[j] == 0:
            continue
        row = pivots.get(j)
        if row is None:
            return False
        if vec[j] % row[j] != 0:
            return False
        q = vec[j] // row[j]
        for jj in range(j, lat.dim):
            vec[jj] -= q * row[jj]
    return True


def kernel_basis(rows: Sequence[Vec]) -> list[Vec]:
    """HNF basis of {v in Z^m : sum_i v_i * rows_i = 0}, m = len(rows).

    Echelon reduction of rows augmented with an identity block; rows that
    reduce to zero expose kernel vectors in the augmented block.
    """
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    aug = []
    for i, r in enumerate(rows):
        if len(r) != width:
            raise DimensionMismatch("mixed vector lengths in kernel computation")
        tail = [0] * m
        tail[i] = 1
        aug.append(list(r) + tail)
    _, zeroed = _echelon(aug, width)
    kernel = [tuple(r[width:]) for r in zeroed]
    return [tuple(r) for r in hnf(kernel).basis]


def orthogonal_basis(rows: Sequence[Vec], dim: int) -> list[Vec]:
    """HNF basis of {h in Z^dim : h . r = 0 for every row r}."""
    if not rows:
        return list(identity(dim).basis)
    cols = [tuple(r[k] for r in rows) for k in range(dim)]
    return kernel_basis(cols)


def intersect(lat1: Lattice, lat2: Lattice) -> Lattice:
    """Lattice of all vectors lying in both lattices."""
    if lat1.dim != lat2.dim:
        raise DimensionMismatch(f"dims {lat1.dim} != {lat2.dim}")
    if not lat1.basis or not lat2.basis:
        return Lattice(dim=lat1.dim, basis=())
    stacked = list(lat1.basis) + list(lat2.basis)
    r1 = len(lat1.basis)
    common = []
    for z in kernel_basis(stacked):
        v = tuple(
            sum(z[i] * lat1.basis[i][k] for i in range(r1)) for k in range(lat1.dim)
        )
        common.append(v)
    return hnf(common)
