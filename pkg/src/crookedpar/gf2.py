"""Exact arithmetic in GF(2^n) and linear algebra over GF(2).

Field elements are plain machine integers holding the coefficient bits of
the polynomial-basis representation (bit i = coefficient of x^i).  A
FieldCtx pins the extension degree and the irreducible modulus; everything
else in the package works on ints relative to a context.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DegreeOutOfRange, ReducibleModulus, SingularMatrix

MAX_DEGREE = 24

# Lowest (numerically) irreducible polynomial of each degree, constant term 1.
# Re-verified by trial division whenever a context is constructed from it.
DEFAULT_MODULI = {
    1: 0x3, 2: 0x7, 3: 0xb, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11b,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201b, 14: 0x4021,
    15: 0x8003, 16: 0x1002b, 17: 0x20009, 18: 0x40009, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001b,
}


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def is_irreducible(poly: int, n: int) -> bool:
    """Trial division of a degree-n polynomial by everything of degree <= n/2."""
    if poly.bit_length() - 1 != n:
        return False
    for d in range(1, n // 2 + 1):
        for low in range(1 << d):
            if _poly_mod(poly, (1 << d) | low) == 0:
                return False
    return True


class FieldCtx:
    """A concrete model of GF(2^n): degree plus irreducible modulus.

    Immutable after construction; all operations are pure, so a context can
    be shared freely between threads.
    """

    __slots__ = ("n", "modulus", "order", "_exp", "_log")

    def __init__(self, n: int, modulus: int):
        if not 1 <= n <= MAX_DEGREE:
            raise DegreeOutOfRange(f"extension degree must be in 1..{MAX_DEGREE}, got {n}")
        if not (modulus >> n) & 1 or not modulus & 1 or modulus.bit_length() - 1 != n:
            raise ReducibleModulus(
                f"modulus {modulus:#x} does not encode a degree-{n} polynomial with constant term 1")
        if not is_irreducible(modulus, n):
            raise ReducibleModulus(f"modulus {modulus:#x} is reducible over GF(2)")
        self.n = n
        self.modulus = modulus
        self.order = 1 << n
        self._exp = None
        self._log = None

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.n == other.n and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.n, self.modulus))

    def __repr__(self):
        return f"FieldCtx(n={self.n}, modulus={self.modulus:#x})"

    def mul(self, a: int, b: int) -> int:
        return _poly_mod(_clmul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        # convention: 0^0 = 1
        r = 1
        a = int(a)
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    # -- discrete-log tables (lazy; used to vectorize power maps) ----------

    def _ensure_tables(self):
        if self._exp is not None:
            return
        if self.n > 16:
            raise DegreeOutOfRange(f"log tables capped at degree 16, got {self.n}")
        g = self.smallest_generator()
        size = self.order - 1
        exp = [0] * (2 * size)
        log = [0] * self.order
        v = 1
        for i in range(size):
            exp[i] = exp[i + size] = v
            log[v] = i
            v = self.mul(v, g)
        if v != 1:  # generator order wrong; cannot happen once verified
            raise RuntimeError("generator has wrong order")  # pragma: no cover
        self._exp = exp
        self._log = log

    def smallest_generator(self) -> int:
        """Smallest element (in word order) of multiplicative order 2^n - 1."""
        size = self.order - 1
        primes = _prime_factors(size)
        for g in range(2, self.order):
            if all(self.pow(g, size // p) != 1 for p in primes):
                return g
        raise ReducibleModulus("no generator found; modulus cannot be irreducible")  # pragma: no cover

    def element_of_order(self, d: int) -> int:
        """An element of exact multiplicative order d (d must divide 2^n - 1)."""
        size = self.order - 1
        if size % d != 0:
            raise ValueError(f"{d} does not divide {size}")
        return self.pow(self.smallest_generator(), size // d)

    def power_lut(self, e: int) -> list[int]:
        """LUT of x -> x^e over the whole field (fast path via log tables)."""
        if self.n <= 16:
            self._ensure_tables()
            exp, log, size = self._exp, self._log, self.order - 1
            lut = [0] * self.order
            lut[0] = 1 if e == 0 else 0
            for x in range(1, self.order):
                lut[x] = exp[(log[x] * e) % size]
            return lut
        return [self.pow(x, e) for x in range(self.order)]


def _prime_factors(v: int) -> list[int]:
    out = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            while v % d == 0:
                v //= d
        d += 1
    if v > 1:
        out.append(v)
    return out


@lru_cache(maxsize=None)
def default_ctx(n: int) -> FieldCtx:
    """Context for the shipped default modulus of degree n."""
    if n not in DEFAULT_MODULI:
        raise DegreeOutOfRange(f"no default modulus for degree {n}")
    return FieldCtx(n, DEFAULT_MODULI[n])


def field_new(n: int, modulus: int) -> FieldCtx:
    return FieldCtx(n, modulus)


def field_mul(ctx: FieldCtx, a: int, b: int) -> int:
    return ctx.mul(a, b)


def field_pow(ctx: FieldCtx, a: int, e: int) -> int:
    return ctx.pow(a, e)


# ---------------------------------------------------------------------------
# Linear algebra over GF(2).  Vectors are ints (bit j = coordinate j),
# matrices are row lists of such ints.
# ---------------------------------------------------------------------------

def parity(v: int) -> int:
    return v.bit_count() & 1


def rank_and_span(vectors, width: int) -> tuple[int, list[int]]:
    """Rank and reduced row-echelon basis of the GF(2)-span of `vectors`.

    The basis is returned ordered by decreasing pivot position, which is
    deterministic for a fixed input order (and in fact canonical for the
    spanned subspace).
    """
    pivots: dict[int, int] = {}
    for v in vectors:
        v = int(v)
        if v >> width:
            raise ValueError(f"vector {v:#x} exceeds width {width}")
        while v:
            p = v.bit_length() - 1
            if p in pivots:
                v ^= pivots[p]
            else:
                pivots[p] = v
                break
    # back-reduce to RREF
    for p in sorted(pivots, reverse=True):
        for q in pivots:
            if q > p and (pivots[q] >> p) & 1:
                pivots[q] ^= pivots[p]
    basis = [pivots[p] for p in sorted(pivots, reverse=True)]
    return len(basis), basis


class BinMatrix:
    """Dense matrix over GF(2); row i stored as an int with bit j = M[i][j]."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: int):
        self.rows = [int(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = ncols
        for r in self.rows:
            if r >> ncols:
                raise ValueError("row entries exceed stated column count")

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "BinMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def from_columns(cls, cols, nrows: int) -> "BinMatrix":
        """Build from column vectors: column j is the image of basis vector j."""
        cols = [int(c) for c in cols]
        rows = [0] * nrows
        for j, c in enumerate(cols):
            for i in range(nrows):
                if (c >> i) & 1:
                    rows[i] |= 1 << j
        return cls(rows, len(cols))

    def __eq__(self, other):
        return (isinstance(other, BinMatrix) and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((tuple(self.rows), self.ncols))

    def __repr__(self):
        return f"BinMatrix({self.nrows}x{self.ncols})"

    def apply(self, v: int) -> int:
        """Matrix-vector product; v and the result are bit vectors."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= parity(row & v) << i
        return out

    def matmul(self, other: "BinMatrix") -> "BinMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        # column j of result = self @ (column j of other)
        cols = []
        for j in range(other.ncols):
            cj = 0
            for i in range(other.nrows):
                cj |= ((other.rows[i] >> j) & 1) << i
            cols.append(self.apply(cj))
        return BinMatrix.from_columns(cols, self.nrows)

    def column(self, j: int) -> int:
        c = 0
        for i in range(self.nrows):
            c |= ((self.rows[i] >> j) & 1) << i
        return c

    def rank(self) -> int:
        return rank_and_span(self.rows, self.ncols)[0]

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def matrix_invert(m: BinMatrix) -> BinMatrix:
    """Gauss-Jordan inverse over GF(2); raises SingularMatrix if rank-deficient."""
    if m.nrows != m.ncols:
        raise SingularMatrix("only square matrices can be inverted")
    n = m.nrows
    aug = [m.rows[i] | (1 << (n + i)) for i in range(n)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if (aug[r] >> col) & 1), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular (no pivot in column {col})")
        aug[row], aug[piv] = aug[piv], aug[row]
        for r in range(n):
            if r != row and (aug[r] >> col) & 1:
                aug[r] ^= aug[row]
        row += 1
    mask = (1 << n) - 1
    return BinMatrix([(r >> n) & mask for r in aug], n)


def linear_map_lut(m: BinMatrix) -> list[int]:
    """Tabulate v -> M v over the full domain by span doubling."""
    n = m.ncols
    lut = [0] * (1 << n)
    for j in range(n):
        img = m.apply(1 << j)
        step = 1 << j
        for i in range(step):
            lut[i + step] = lut[i] ^ img
    return lut


def matrix_of_field_map(ctx: FieldCtx, images) -> BinMatrix:
    """Matrix (w.r.t. the polynomial basis) of the linear map sending
    basis element x^j to images[j]."""
    return BinMatrix.from_columns(list(images), ctx.n)


def frobenius_matrix(ctx: FieldCtx, i: int = 1) -> BinMatrix:
    """Matrix of x -> x^(2^i), which is GF(2)-linear on the field."""
    return matrix_of_field_map(ctx, [ctx.pow(1 << j, 1 << i) for j in range(ctx.n)])


def mul_matrix(ctx: FieldCtx, c: int) -> BinMatrix:
    """Matrix of x -> c*x."""
    return matrix_of_field_map(ctx, [ctx.mul(c, 1 << j) for j in range(ctx.n)])


def random_invertible(n: int, rng) -> BinMatrix:
    """Uniform-ish random invertible n x n matrix by rejection sampling."""
    while True:
        rows = [rng.getrandbits(n) for _ in range(n)]
        m = BinMatrix(rows, n)
        if m.is_invertible():
            return m
