"""The coloring of PG(n,2) lines induced by a function on GF(2^n).

For points p = (x, x1) and q = (y, y1) the color of the pair is

    f(x + y) + f(x) + f(y) + f(x1*y + y1*x)

which is constant on the three point pairs of any line.  For a crooked f
the color classes partition the lines into spreads; building that
partition and the related image-set computations live here.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import (DegreeTooLarge, InconsistentColoring, PointNotInHyperplane,
                     ZeroColor)
from .geometry import Parallelism, all_lines_array, make_parallelism, point_split
from .vbf import VBF

PARALLELISM_MAX_N = 9


def cf_eval(f: VBF, p: int, q: int) -> int:
    n = f.n
    x, x1 = point_split(p, n)
    y, y1 = point_split(q, n)
    cross = (y if x1 else 0) ^ (x if y1 else 0)
    lut = f.lut
    return lut[x ^ y] ^ lut[x] ^ lut[y] ^ lut[cross]


def _cf_eval_lines(f: VBF, lines: np.ndarray, pi: int, qi: int) -> np.ndarray:
    """Vectorized cf over one point-pair column choice of a line array."""
    n = f.n
    arr = f.as_array()
    mask = (1 << n) - 1
    p = lines[:, pi]
    q = lines[:, qi]
    x, x1 = p & mask, p >> n
    y, y1 = q & mask, q >> n
    cross = (y * x1) ^ (x * y1)
    return arr[x ^ y] ^ arr[x] ^ arr[y] ^ arr[cross]


def line_color(f: VBF, line) -> int:
    """Color of a line; evaluates all three point pairs and insists they
    agree rather than trusting that they must."""
    p, q, r = (int(v) for v in line)
    c1 = cf_eval(f, p, q)
    c2 = cf_eval(f, p, r)
    c3 = cf_eval(f, q, r)
    if not c1 == c2 == c3:
        raise InconsistentColoring(
            f"line {line} got colors {c1}/{c2}/{c3}; input is not a line or LUT is broken")
    if c1 == 0:
        raise ZeroColor(f"line {line} has color 0; function is too degenerate to color lines")
    return c1


def color_lines(f: VBF, lines: np.ndarray, threads: int = 1) -> np.ndarray:
    """Colors for an (L, 3) line array, with the three-pair agreement check.

    Batches may be farmed out to a thread pool; the result is assembled by
    index and therefore independent of scheduling.
    """
    def one_chunk(chunk: np.ndarray) -> np.ndarray:
        c1 = _cf_eval_lines(f, chunk, 0, 1)
        c2 = _cf_eval_lines(f, chunk, 0, 2)
        c3 = _cf_eval_lines(f, chunk, 1, 2)
        if not (np.array_equal(c1, c2) and np.array_equal(c1, c3)):
            bad = int(np.flatnonzero((c1 != c2) | (c1 != c3))[0])
            raise InconsistentColoring(f"line {tuple(chunk[bad])} has disagreeing pair colors")
        return c1

    if threads <= 1 or len(lines) < 1024:
        colors = one_chunk(lines)
    else:
        chunks = np.array_split(lines, threads * 4)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            colors = np.concatenate(list(pool.map(one_chunk, chunks)))
    if (colors == 0).any():
        bad = int(np.flatnonzero(colors == 0)[0])
        raise ZeroColor(f"line {tuple(lines[bad])} has color 0")
    return colors


def build_parallelism(f: VBF, threads: int = 1) -> Parallelism:
    """Group all lines of PG(n,2) by color.

    No crookedness check is made up front: degenerate inputs surface as
    ZeroColor / InconsistentColoring here or as a verify_parallelism
    failure afterwards.
    """
    n = f.n
    if n > PARALLELISM_MAX_N:
        raise DegreeTooLarge(f"full parallelism materialization capped at n={PARALLELISM_MAX_N}")
    if not f.normalized:
        raise ZeroColor("function must satisfy f(0) = 0 to induce a line coloring")
    lines = all_lines_array(n)
    colors = color_lines(f, lines, threads=threads)
    order = np.lexsort((lines[:, 2], lines[:, 1], lines[:, 0], colors))
    lines = lines[order]
    colors = colors[order]
    class_map: dict[int, list] = {}
    boundaries = np.flatnonzero(np.diff(colors)) + 1
    for chunk, color_chunk in zip(np.split(lines, boundaries), np.split(colors, boundaries)):
        class_map[int(color_chunk[0])] = [tuple(int(v) for v in row) for row in chunk]
    return make_parallelism(n, f.ctx.modulus, class_map)


def hyperplane_image(f: VBF, p: int) -> frozenset:
    """Image set of cf(p, .) over the distinguished hyperplane (top bit 0)."""
    n = f.n
    if p == 0 or p >> n:
        raise PointNotInHyperplane(f"point {p} is not a nonzero point of the hyperplane")
    arr = f.as_array()
    y = np.arange(1, 1 << n, dtype=np.int64)
    vals = arr[y ^ p] ^ arr[y] ^ arr[p]
    return frozenset(int(v) for v in np.unique(vals))
