"""Incidence objects of the binary projective space PG(n,2).

Points are the nonzero (n+1)-bit words; a pair (x, x1) in
GF(2^n) x GF(2) encodes as (x1 << n) | x, so the distinguished hyperplane
(top bit 0) is GF(2^n) x {0}.  Lines are the XOR-closed 3-sets
{p, q, p^q}, stored as ascending tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAHyperplane
from .gf2 import parity, rank_and_span

Line = tuple[int, int, int]


def point_make(x: int, x1: int, n: int) -> int:
    return (x1 << n) | x


def point_split(p: int, n: int) -> tuple[int, int]:
    return p & ((1 << n) - 1), p >> n


def line_through(p: int, q: int) -> Line:
    if p == 0 or q == 0 or p == q:
        raise ValueError(f"need two distinct nonzero points, got {p}, {q}")
    return tuple(sorted((p, q, p ^ q)))


def gaussian(q: int, b: int, a: int) -> int:
    """Gaussian binomial coefficient: subspace count, exact integer."""
    if q < 2:
        raise ValueError("base must be at least 2")
    if not 0 <= a <= b:
        return 0
    num = den = 1
    for i in range(1, a + 1):
        num *= q ** (b - a + i) - 1
        den *= q ** i - 1
    return num // den


def all_lines(n: int) -> list[Line]:
    """Every line of PG(n,2) exactly once, in ascending triple order."""
    npts = (1 << (n + 1)) - 1
    out = []
    for p in range(1, npts + 1):
        for q in range(p + 1, npts + 1):
            r = p ^ q
            if r > q:
                out.append((p, q, r))
    return out


def all_lines_array(n: int) -> np.ndarray:
    """Same lines as all_lines but as an (L, 3) int array (colorable in bulk)."""
    npts = (1 << (n + 1)) - 1
    ps, qs = [], []
    for p in range(1, npts + 1):
        q = np.arange(p + 1, npts + 1, dtype=np.int64)
        keep = (q ^ p) > q
        ps.append(np.full(int(keep.sum()), p, dtype=np.int64))
        qs.append(q[keep])
    p = np.concatenate(ps)
    q = np.concatenate(qs)
    return np.column_stack([p, q, p ^ q])


def verify_spread(lines, n: int) -> bool:
    """Do the given lines partition the point set of PG(n,2)?"""
    covered = 0
    for line in lines:
        p, q, r = (int(v) for v in line)
        if p == 0 or q == 0 or r == 0 or p ^ q ^ r != 0:
            return False
        m = (1 << p) | (1 << q) | (1 << r)
        if covered & m:
            return False
        covered |= m
    return covered == (1 << (1 << (n + 1))) - 2


@dataclass(frozen=True)
class Parallelism:
    """Spreads labeled by colors; colors are nonzero field elements."""
    n: int
    modulus: int
    classes: tuple  # ((color, (line, line, ...)), ...) sorted by color

    @property
    def spread_count(self) -> int:
        return len(self.classes)

    def line_count(self) -> int:
        return sum(len(lines) for _, lines in self.classes)

    def color_of_line(self) -> dict:
        out = {}
        for color, lines in self.classes:
            for line in lines:
                out[line] = color
        return out

    def spreads_as_sets(self) -> set:
        return {frozenset(lines) for _, lines in self.classes}


def make_parallelism(n: int, modulus: int, class_map: dict) -> Parallelism:
    """Normalize a color -> iterable-of-lines map into sorted tuple form."""
    classes = tuple(
        (color, tuple(sorted(tuple(int(v) for v in line) for line in class_map[color])))
        for color in sorted(class_map))
    return Parallelism(n, modulus, classes)


def verify_parallelism(par: Parallelism, n: int | None = None) -> bool:
    """Each class a spread, classes line-disjoint, union = all lines."""
    if n is None:
        n = par.n
    elif n != par.n:
        return False
    seen = set()
    for color, lines in par.classes:
        if color == 0:
            return False
        if not verify_spread(lines, n):
            return False
        for line in lines:
            if line in seen:
                return False
            seen.add(line)
    return seen == set(all_lines(n))


def hyperplane_points(mask: int, n: int) -> frozenset:
    """Point set of the hyperplane with defining functional `mask`
    (membership = even parity of AND)."""
    if mask == 0 or mask >> (n + 1):
        raise NotAHyperplane(f"functional {mask:#x} is not valid for PG({n},2)")
    return frozenset(p for p in range(1, 1 << (n + 1)) if parity(p & mask) == 0)


def hyperplane_line_count(spread, hyperplane_pts, n: int) -> int:
    """Number of lines of the spread lying entirely inside the hyperplane."""
    pts = frozenset(int(p) for p in hyperplane_pts)
    if len(pts) != (1 << n) - 1 or 0 in pts:
        raise NotAHyperplane(f"point set of size {len(pts)} cannot be a hyperplane of PG({n},2)")
    rank, _ = rank_and_span(pts, n + 1)
    if rank != n:
        raise NotAHyperplane("point set does not span a subspace of codimension 1")
    return sum(1 for line in spread
               if all(int(v) in pts for v in line))


def compare_parallelisms(a: Parallelism, b: Parallelism) -> str:
    """'equal' (same color -> spread map), 'relabeled' (same spreads under
    different colors) or 'different'."""
    amap = {color: frozenset(lines) for color, lines in a.classes}
    bmap = {color: frozenset(lines) for color, lines in b.classes}
    if amap == bmap:
        return "equal"
    if set(amap.values()) == set(bmap.values()):
        return "relabeled"
    return "different"
