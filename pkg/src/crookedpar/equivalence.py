"""Collineations of PG(n,2) in block form, equivalence witnesses between
induced parallelisms, and an exhaustive (pruned) witness search.

A witness is a pair (sigma, kappa): sigma a 0-fixing permutation of
GF(2^n) acting on colors and kappa an invertible map of GF(2)^(n+1)
written in the block form

    M = [ A  alpha ]      kappa((x, x1)) = (A x + alpha*x1, B x + beta*x1)
        [ B  beta  ]

A witness relates two colorings by sigma(c'(p, q)) = c(kappa p, kappa q);
equivalently kappa carries the spreads of the second parallelism onto the
spreads of the first with sigma as the induced color bijection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvariantViolation, SingularMatrix
from .gf2 import BinMatrix, linear_map_lut, matrix_invert
from .geometry import Parallelism
from .vbf import VBF

SEARCH_COMPLETE_MAX_N = 5
DEFAULT_BUDGET = 500_000_000


@dataclass(frozen=True)
class Collineation:
    """Invertible (n+1)x(n+1) matrix over GF(2) acting on points."""
    matrix: BinMatrix

    def __post_init__(self):
        if not self.matrix.is_invertible():
            raise SingularMatrix("collineation matrix must be invertible")

    @property
    def n(self) -> int:
        return self.matrix.nrows - 1

    def apply(self, p: int) -> int:
        return self.matrix.apply(p)

    def point_lut(self) -> list[int]:
        return linear_map_lut(self.matrix)

    def blocks(self):
        """(A, alpha, B, beta) of the block form."""
        n = self.n
        mask = (1 << n) - 1
        a = BinMatrix([r & mask for r in self.matrix.rows[:n]], n)
        alpha = 0
        for i in range(n):
            alpha |= ((self.matrix.rows[i] >> n) & 1) << i
        b = self.matrix.rows[n] & mask
        beta = (self.matrix.rows[n] >> n) & 1
        return a, alpha, b, beta

    def fixes_hyperplane(self) -> bool:
        """kappa(H) = H for the distinguished hyperplane (top bit 0),
        i.e. B = 0 in block form (and then beta = 1 by invertibility)."""
        _, _, b, _ = self.blocks()
        return b == 0


def collineation_from_blocks(a: BinMatrix, alpha: int, b: int, beta: int) -> Collineation:
    n = a.nrows
    rows = [a.rows[i] | (((alpha >> i) & 1) << n) for i in range(n)]
    rows.append((b & ((1 << n) - 1)) | (beta << n))
    return Collineation(BinMatrix(rows, n + 1))


def collineation_apply(kappa: Collineation, p: int) -> int:
    return kappa.apply(p)


@dataclass(frozen=True)
class Witness:
    """Color permutation sigma (as a LUT, sigma[0] = 0) plus collineation."""
    sigma: tuple
    kappa: Collineation

    def __post_init__(self):
        if self.sigma[0] != 0 or len(set(self.sigma)) != len(self.sigma):
            raise ValueError("sigma must be a 0-fixing permutation")

    @property
    def n(self) -> int:
        return self.kappa.n

    def sigma_is_additive(self) -> bool:
        sig = self.sigma
        size = len(sig)
        for u in range(size):
            for v in range(u + 1, size):
                if sig[u ^ v] != sig[u] ^ sig[v]:
                    return False
        return True


def witness_from_linear(l1: BinMatrix, l2: BinMatrix) -> Witness:
    """Witness for f' = L1 f L2: sigma = L1^(-1), kappa = diag-block(L2, 1)."""
    sigma = tuple(linear_map_lut(matrix_invert(l1)))
    kappa = collineation_from_blocks(l2, 0, 0, 1)
    return Witness(sigma, kappa)


def witness_from_affine(sigma_map: BinMatrix, a: BinMatrix, alpha: int) -> Witness:
    """Witness for f'(x) = sigma(f(Ax + alpha)) + sigma(f(alpha)):
    color map sigma^(-1), kappa = block(A, alpha, 0, 1)."""
    sigma = tuple(linear_map_lut(matrix_invert(sigma_map)))
    kappa = collineation_from_blocks(a, alpha, 0, 1)
    return Witness(sigma, kappa)


def _cf_table(f: VBF) -> np.ndarray:
    arr = f.as_array()
    n = f.n
    pts = np.arange(1 << (n + 1), dtype=np.int64)
    x = pts & ((1 << n) - 1)
    x1 = pts >> n
    xx, yy = np.meshgrid(x, x, indexing="ij")
    b1, b2 = np.meshgrid(x1, x1, indexing="ij")
    cross = (yy * b1) ^ (xx * b2)
    return arr[xx ^ yy] ^ arr[xx] ^ arr[yy] ^ arr[cross]


def verify_witness(f: VBF, fprime: VBF, w: Witness) -> bool:
    """Exhaustive check of sigma(c'(p, q)) = c(kappa p, kappa q)."""
    if f.n != fprime.n or w.n != f.n:
        raise DimensionMismatch("functions and witness must share one degree")
    sig = np.asarray(w.sigma, dtype=np.int64)
    kmap = np.asarray(w.kappa.point_lut(), dtype=np.int64)
    left = sig[_cf_table(fprime)]
    right = _cf_table(f)[np.ix_(kmap, kmap)]
    return bool(np.array_equal(left, right))


def verify_witness_on_parallelisms(p1: Parallelism, p2: Parallelism, w: Witness) -> bool:
    """Line-level form of the witness condition: every line of p2 with color
    u maps under kappa to a p1-line of color sigma[u]."""
    if p1.n != p2.n or w.n != p1.n:
        raise DimensionMismatch("parallelisms and witness must share one dimension")
    kmap = w.kappa.point_lut()
    color1 = p1.color_of_line()
    sig = w.sigma
    for color, lines in p2.classes:
        want = sig[color]
        for p, q, _ in lines:
            img = tuple(sorted((kmap[p], kmap[q], kmap[p] ^ kmap[q])))
            if color1.get(img) != want:
                return False
    return True


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    status: str  # "witness" | "inequivalent" | "budget_exceeded"
    witness: Witness | None
    nodes: int
    exploratory: bool = False

    @property
    def found(self) -> bool:
        return self.status == "witness"


class _SourceStructure:
    """Per-depth constraint tables for the source parallelism.

    The source basis is the standard one, so after d images are chosen the
    mapped source points are exactly 1..2^d-1 and the constrained lines are
    the line triples inside that range, grouped by source spread.
    """

    def __init__(self, par: Parallelism, dim: int):
        spread_of = {}
        self.colors = []
        for ci, (color, lines) in enumerate(par.classes):
            self.colors.append(color)
            for line in lines:
                spread_of[line] = ci
        self.levels = {}
        for d in range(2, dim + 1):
            lines = [(i, j, i ^ j)
                     for i in range(1, 1 << d)
                     for j in range(i + 1, 1 << d)
                     if (i ^ j) > j]
            order = sorted(range(len(lines)), key=lambda t: (spread_of[lines[t]], lines[t]))
            lines = [lines[t] for t in order]
            eye = np.array([l[0] for l in lines], dtype=np.int64)
            jay = np.array([l[1] for l in lines], dtype=np.int64)
            sp = [spread_of[l] for l in lines]
            groups = []
            reps = []
            start = 0
            for t in range(1, len(lines) + 1):
                if t == len(lines) or sp[t] != sp[start]:
                    reps.append(start)
                    if t - start >= 2:
                        groups.append((start, t))
                    start = t
            self.levels[d] = (eye, jay, groups, np.array(reps, dtype=np.int64))


def search_equivalence(p1: Parallelism, p2: Parallelism,
                       budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Decide equivalence of two labeled parallelisms by exhaustive
    backtracking over collineation basis images.

    Candidates at each depth are every point outside the current span, in
    ascending order; a candidate batch is pruned by requiring that the
    image spreads be constant on every source spread represented in the
    span and pairwise distinct across spreads.  The first surviving full
    assignment yields the witness (deterministic); full exhaustion proves
    inequivalence.  Complete up to n = 5 by the stated budget default.
    """
    if p1.n != p2.n:
        raise DimensionMismatch(f"cannot compare PG({p1.n},2) with PG({p2.n},2)")
    n = p1.n
    dim = n + 1
    npoints = (1 << dim) - 1

    # target lookup: (p << dim | q) -> spread index, both orders
    spread1 = np.full(1 << (2 * dim), -1, dtype=np.int16)
    colors1 = []
    for ci, (color, lines) in enumerate(p1.classes):
        colors1.append(color)
        for p, q, r in lines:
            for u, v in ((p, q), (q, p), (p, r), (r, p), (q, r), (r, q)):
                spread1[(u << dim) | v] = ci
    src = _SourceStructure(p2, dim)

    nodes = 0
    budget_hit = False

    def descend(img: np.ndarray, depth: int):
        nonlocal nodes, budget_hit
        used = np.zeros(npoints + 1, dtype=bool)
        used[img] = True
        cands = np.flatnonzero(~used)
        if cands.size == 0:
            return None
        nodes += cands.size
        if nodes > budget:
            budget_hit = True
            return None
        newdim = depth + 1
        full = np.concatenate(
            [np.broadcast_to(img, (cands.size, img.size)),
             img[None, :] ^ cands[:, None]], axis=1)
        if newdim >= 4:
            eye, jay, groups, reps = src.levels[newdim]
            keys = (full[:, eye] << dim) | full[:, jay]
            targets = spread1[keys]
            valid = np.ones(cands.size, dtype=bool)
            for s, e in groups:
                block = targets[:, s:e]
                valid &= (block == block[:, :1]).all(axis=1)
            rt = np.sort(targets[:, reps], axis=1)
            if rt.shape[1] > 1:
                valid &= (np.diff(rt, axis=1) != 0).all(axis=1)
        else:
            valid = np.ones(cands.size, dtype=bool)
        for t in np.flatnonzero(valid):
            child = full[t]
            if newdim == dim:
                found = _extract_witness(child, src, spread1, colors1, p1, p2)
                if found is not None:
                    return found
            else:
                found = descend(child, newdim)
                if found is not None or budget_hit:
                    return found
            if budget_hit:
                return None
        return None

    witness = descend(np.zeros(1, dtype=np.int64), 0)
    if witness is not None:
        return SearchResult("witness", witness, nodes, exploratory=n <= 3)
    if budget_hit:
        return SearchResult("budget_exceeded", None, nodes, exploratory=n <= 3)
    return SearchResult("inequivalent", None, nodes, exploratory=n <= 3)


def _extract_witness(img: np.ndarray, src: _SourceStructure, spread1: np.ndarray,
                     colors1: list, p1: Parallelism, p2: Parallelism):
    n = p1.n
    dim = n + 1
    eye, jay, _, reps = src.levels[dim]
    keys = (img[eye] << dim) | img[jay]
    targets = spread1[keys]
    # group g of the full level is exactly the g-th class of p2
    sigma = [0] * (1 << n)
    for g, rep in enumerate(reps):
        sigma[p2.classes[g][0]] = colors1[int(targets[rep])]
    cols = [int(img[1 << j]) for j in range(dim)]
    kappa = Collineation(BinMatrix.from_columns(cols, dim))
    w = Witness(tuple(sigma), kappa)
    if not verify_witness_on_parallelisms(p1, p2, w):
        raise InvariantViolation("search produced a witness that fails verification")
    return w
