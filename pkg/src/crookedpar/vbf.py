"""Vectorial Boolean functions on GF(2^n) as full lookup tables.

Carries the decision procedures used everywhere else: APN (0-or-2 solution
counts of the derivative equations), permutation, crookedness (two
independent methods), and algebraic degree via the binary Moebius
transform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeTooLargeForMethod, ZeroDirection
from .gf2 import FieldCtx

DEFINITION_METHOD_MAX_N = 7
HYPERPLANE_METHOD_MAX_N = 15


class VBF:
    """A function GF(2^n) -> GF(2^n) stored as a LUT of 2^n words."""

    __slots__ = ("ctx", "lut", "_arr")

    def __init__(self, ctx: FieldCtx, lut):
        lut = tuple(int(v) for v in lut)
        if len(lut) != ctx.order:
            raise ValueError(f"LUT must have exactly {ctx.order} entries, got {len(lut)}")
        for v in lut:
            if not 0 <= v < ctx.order:
                raise ValueError(f"LUT value {v} out of range for degree {ctx.n}")
        self.ctx = ctx
        self.lut = lut
        self._arr = None

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def normalized(self) -> bool:
        """Whether f(0) = 0 holds."""
        return self.lut[0] == 0

    def __call__(self, x: int) -> int:
        return self.lut[x]

    def __eq__(self, other):
        return isinstance(other, VBF) and self.ctx == other.ctx and self.lut == other.lut

    def __hash__(self):
        return hash((self.ctx, self.lut))

    def __repr__(self):
        return f"VBF(n={self.n}, lut[:4]={list(self.lut[:4])}...)"

    def as_array(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.asarray(self.lut, dtype=np.int64)
        return self._arr


@dataclass(frozen=True)
class DerivativeImage:
    """Image set of x -> f(x + a) + f(x) for one nonzero direction a."""
    direction: int
    image: frozenset = field(repr=False)

    def __len__(self):
        return len(self.image)


def derivative_image(f: VBF, a: int) -> DerivativeImage:
    if a == 0:
        raise ZeroDirection("derivative direction must be nonzero")
    lut = f.lut
    img = frozenset(lut[x ^ a] ^ lut[x] for x in range(len(lut)))
    return DerivativeImage(a, img)


def bf_eval(f: VBF, x: int, y: int) -> int:
    """The symmetric companion f(x) + f(y) + f(x+y)."""
    lut = f.lut
    return lut[x] ^ lut[y] ^ lut[x ^ y]


def bf_table(f: VBF) -> np.ndarray:
    """Full 2^n x 2^n table of the symmetric companion."""
    arr = f.as_array()
    idx = np.arange(arr.size, dtype=np.int64)
    return arr[idx[:, None] ^ idx[None, :]] ^ arr[:, None] ^ arr[None, :]


def is_apn(f: VBF, method: str = "derivative") -> bool:
    """0-or-2 solution count for f(x+a)+f(x)=b over all a != 0, b.

    method="derivative" counts derivative-value multiplicities directly;
    method="bilinear" runs the equivalent test on the symmetric companion
    (solution counts of B_f(a, x) = b).  Both agree; the second exists as a
    cross-check.
    """
    arr = f.as_array()
    order = arr.size
    idx = np.arange(order, dtype=np.int64)
    for a in range(1, order):
        d = arr[idx ^ a] ^ arr
        if method == "bilinear":
            d = d ^ arr[a]
        counts = np.bincount(d, minlength=order)
        if not np.all((counts == 0) | (counts == 2)):
            return False
    return True


def is_permutation(f: VBF) -> bool:
    return len(set(f.lut)) == f.ctx.order


def _sorted_subspace_basis(k: np.ndarray):
    """If the strictly sorted array k (k[0]==0, power-of-two length) enumerates
    a linear subspace, return its canonical basis, else None.

    A subspace listed in increasing order satisfies k[i ^ j] = k[i] ^ k[j],
    so rebuilding the array from k[1], k[2], k[4], ... and comparing is a
    complete closure test.
    """
    size = k.size
    if size & (size - 1) or k[0] != 0:
        return None
    if size > 1 and not (np.diff(k) > 0).all():
        return None
    dim = size.bit_length() - 1
    rebuilt = np.zeros(size, dtype=k.dtype)
    for j in range(dim):
        step = 1 << j
        rebuilt[step:2 * step] = rebuilt[:step] ^ k[step]
    if not np.array_equal(rebuilt, k):
        return None
    return tuple(int(k[1 << j]) for j in range(dim))


def _is_crooked_definition(f: VBF) -> bool:
    lut = f.lut
    if lut[0] != 0:
        return False
    arr = f.as_array()
    order = arr.size
    idx = np.arange(order, dtype=np.int64)
    # distinct triples: f(x)+f(y)+f(z)+f(x+y+z) must not vanish.  For
    # pairwise-distinct x, y, z the fourth point x^y^z never equals any of
    # them, and z in {x, y} are exactly the two forced zeros per (x, y) pair.
    for x in range(order):
        fx = lut[x]
        for y in range(x + 1, order):
            v = arr[idx ^ (x ^ y)] ^ arr ^ (fx ^ lut[y])
            if np.count_nonzero(v == 0) != 2:
                return False
    # no three derivative values in one direction may sum to zero
    for a in range(1, order):
        h = np.unique(arr[idx ^ a] ^ arr)
        sums = (h[:, None] ^ h[None, :]).ravel()
        hit = np.zeros(order, dtype=bool)
        hit[sums] = True
        if hit[h].any():
            return False
    return True


def _is_crooked_hyperplane(f: VBF) -> bool:
    lut = f.lut
    if lut[0] != 0:
        return False
    arr = f.as_array()
    order = arr.size
    half = order >> 1
    idx = np.arange(order, dtype=np.int64)
    seen = set()
    for a in range(1, order):
        d = np.sort(arr[idx ^ a] ^ arr)
        # APN-style pairing: every attained value exactly twice
        if not np.array_equal(d[0::2], d[1::2]):
            return False
        image = d[0::2]
        if image.size != half or image[0] == 0:
            # 0 in the image means the set contains 0, i.e. it could only be
            # the hyperplane itself, never the complement of one
            return False
        if not (np.diff(image) > 0).all():
            return False
        basis = _sorted_subspace_basis(np.sort(image ^ arr[a]))
        if basis is None:
            return False
        seen.add(basis)
    return len(seen) == order - 1


def is_crooked(f: VBF, method: str = "hyperplane") -> bool:
    """Crookedness test.

    method="definition" checks the defining conditions literally: f(0)=0,
    nonvanishing four-term sums over distinct triples, and nonvanishing
    six-term sums over every direction (cost ~2^{3n}; capped at n<=7).

    method="hyperplane" checks, per direction a != 0, that the derivative
    image H_a is the complement of a linear hyperplane (the shift
    H_a + f(a) is a subspace of dimension n-1 and 0 is not in H_a) and that
    all 2^n - 1 image sets are pairwise distinct (capped at n<=15).
    """
    if method == "definition":
        if f.n > DEFINITION_METHOD_MAX_N:
            raise DegreeTooLargeForMethod(
                f"definition method capped at n={DEFINITION_METHOD_MAX_N}, got {f.n}")
        return _is_crooked_definition(f)
    if method == "hyperplane":
        if f.n > HYPERPLANE_METHOD_MAX_N:
            raise DegreeTooLargeForMethod(
                f"hyperplane method capped at n={HYPERPLANE_METHOD_MAX_N}, got {f.n}")
        return _is_crooked_hyperplane(f)
    raise ValueError(f"unknown method {method!r}")


def algebraic_degree(f: VBF) -> int:
    """Max Hamming weight of an exponent mask with nonzero ANF coefficient.

    The Moebius transform runs on all n coordinate functions at once by
    XOR-butterflying the packed LUT; the zero function has degree 0.
    """
    arr = f.as_array().copy()
    n = f.n
    for i in range(n):
        arr = arr.reshape(-1, 2, 1 << i)
        arr[:, 1, :] ^= arr[:, 0, :]
        arr = arr.reshape(-1)
    masks = np.flatnonzero(arr)
    if masks.size == 0:
        return 0
    weights = np.array([int(m).bit_count() for m in masks])
    return int(weights.max())
