"""The binary Hamming code of length 2^(n+1)-1, the Preparata-like code
carved out of it by a function f on GF(2^n), and the partition of the
Hamming code into additive translates of that code.

Codewords live on the coordinate set GF(2^n)* + GF(2^n) and are stored as
a support pair (X, Y): X a set of nonzero field elements, Y any set of
field elements, packed as bitmasks (bit a of xmask = "a in X").

Membership rules:
  Hamming      |Y| even and xor-sum(X) = xor-sum(Y)
  Preparata    additionally xor-sum(f[X]) = xor-sum(f[Y]) + f(xor-sum(Y))

The translate set uses base coordinate e1 = (0, 1): translate t_a has
support {(0,1), (a,0), (a,1)}, i.e. X = {a}, Y = {0, a}, and every Hamming
word lands in exactly one of {P} + {P + t_a} when f is crooked.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import (DegreeTooLarge, InvariantViolation, MalformedCodewordFile,
                     MultipleTranslatesFound, NotInHamming, NoTranslateFound,
                     TooFewWords)
from .geometry import Parallelism, all_lines, make_parallelism
from .vbf import VBF

ENUMERATION_DEGREE = 3
PARTITION_MAX_N = 9
BASE_LABEL = 0  # translate labels are field elements; 0 marks the base part


@dataclass(frozen=True)
class CodewordXY:
    """Support-pair view of a length 2^(n+1)-1 word."""
    n: int
    xmask: int  # bits 1..2^n-1 usable
    ymask: int  # bits 0..2^n-1

    def __post_init__(self):
        size = 1 << self.n
        if self.xmask & 1 or self.xmask >> size or self.ymask >> size:
            raise ValueError("support mask out of range")

    @property
    def weight(self) -> int:
        return self.xmask.bit_count() + self.ymask.bit_count()

    def __xor__(self, other: "CodewordXY") -> "CodewordXY":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return CodewordXY(self.n, self.xmask ^ other.xmask, self.ymask ^ other.ymask)

    def distance(self, other: "CodewordXY") -> int:
        return (self.xmask ^ other.xmask).bit_count() + (self.ymask ^ other.ymask).bit_count()

    @classmethod
    def from_sets(cls, n: int, xs, ys) -> "CodewordXY":
        xm = ym = 0
        for a in xs:
            xm |= 1 << a
        for y in ys:
            ym |= 1 << y
        return cls(n, xm, ym)

    def x_set(self) -> frozenset:
        return frozenset(_bits(self.xmask))

    def y_set(self) -> frozenset:
        return frozenset(_bits(self.ymask))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _xor_indices(mask: int) -> int:
    acc = 0
    for b in _bits(mask):
        acc ^= b
    return acc


def _xor_lut(mask: int, lut) -> int:
    acc = 0
    for b in _bits(mask):
        acc ^= lut[b]
    return acc


def hamming_contains(c: CodewordXY) -> bool:
    return c.ymask.bit_count() % 2 == 0 and _xor_indices(c.xmask) == _xor_indices(c.ymask)


def preparata_contains(f: VBF, c: CodewordXY) -> bool:
    if f.n != c.n:
        raise ValueError("codeword length does not match field degree")
    if c.ymask.bit_count() % 2 != 0:
        return False
    sy = _xor_indices(c.ymask)
    if _xor_indices(c.xmask) != sy:
        return False
    lut = f.lut
    return _xor_lut(c.xmask, lut) == _xor_lut(c.ymask, lut) ^ lut[sy]


def enumerate_hamming(n: int) -> list[CodewordXY]:
    """All Hamming words by brute force; only sensible for n = 3 (2048 words)."""
    if n > ENUMERATION_DEGREE:
        raise DegreeTooLarge(f"full Hamming enumeration only supported for n <= {ENUMERATION_DEGREE}")
    size = 1 << n
    out = []
    for xs in range(1 << (size - 1)):
        xmask = xs << 1
        sx = _xor_indices(xmask)
        for ymask in range(1 << size):
            if ymask.bit_count() % 2 == 0 and _xor_indices(ymask) == sx:
                out.append(CodewordXY(n, xmask, ymask))
    return out


def enumerate_preparata(f: VBF, threads: int = 1) -> list[CodewordXY]:
    """All codewords of the function's Preparata-like code, n = 3 only
    (the size doubles with every added point of the field)."""
    n = f.n
    if n > ENUMERATION_DEGREE:
        raise DegreeTooLarge(f"enumeration only supported for n <= {ENUMERATION_DEGREE}")
    size = 1 << n
    lut = f.lut

    def scan(xs_range) -> list[CodewordXY]:
        found = []
        for xs in xs_range:
            xmask = xs << 1
            sx = _xor_indices(xmask)
            fx = _xor_lut(xmask, lut)
            for ymask in range(1 << size):
                if ymask.bit_count() % 2 != 0:
                    continue
                sy = _xor_indices(ymask)
                if sy != sx:
                    continue
                if _xor_lut(ymask, lut) ^ lut[sy] == fx:
                    found.append(CodewordXY(n, xmask, ymask))
        return found

    xs_all = range(1 << (size - 1))
    if threads <= 1:
        return scan(xs_all)
    chunks = [range(i, len(xs_all), threads) for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(scan, chunks))
    return sorted((w for part in parts for w in part), key=lambda w: (w.xmask, w.ymask))


def min_distance(words) -> int:
    words = list(words)
    if len(words) < 2:
        raise TooFewWords("need at least two words")
    packed = [(w.xmask << (1 << w.n)) | w.ymask for w in words]
    best = None
    for i, a in enumerate(packed):
        for b in packed[i + 1:]:
            d = (a ^ b).bit_count()
            if best is None or d < best:
                best = d
                if best == 0:
                    return 0
    return best


# ---------------------------------------------------------------------------
# Translate partition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TranslateSet:
    """Weight-3 Hamming words t_a indexed by the nonzero field elements."""
    n: int

    @property
    def labels(self) -> range:
        return range(1, 1 << self.n)

    def vector(self, a: int) -> CodewordXY:
        if not 0 < a < (1 << self.n):
            raise ValueError(f"label {a} not a nonzero field element")
        return CodewordXY(self.n, 1 << a, 1 | (1 << a))


def translates(n: int) -> TranslateSet:
    return TranslateSet(n)


def assign_translate(f: VBF, c: CodewordXY) -> int:
    """Unique label u with c + t_u in the Preparata-like code of f
    (label 0 = c itself is in the code).

    Works incrementally from the support sums, so the cost is the codeword
    weight plus 2^n constant-time candidate checks; no enumeration.
    """
    if not hamming_contains(c):
        raise NotInHamming("codeword fails the Hamming membership conditions")
    lut = f.lut
    f0 = lut[0]
    sy = _xor_indices(c.ymask)
    fx = _xor_lut(c.xmask, lut)
    fy = _xor_lut(c.ymask, lut)
    matches = []
    if fx == fy ^ lut[sy]:
        matches.append(BASE_LABEL)
    for a in range(1, 1 << f.n):
        # toggling X at a and Y at {0, a} shifts the X f-sum by f(a), the
        # Y f-sum by f(0)+f(a) and the Y index sum by a; |Y| parity and the
        # Hamming conditions persist
        fa = lut[a]
        if fx ^ fa == fy ^ f0 ^ fa ^ lut[sy ^ a]:
            matches.append(a)
    if not matches:
        raise NoTranslateFound("Hamming word belongs to no translate; partition property refuted")
    if len(matches) > 1:
        raise MultipleTranslatesFound(
            f"Hamming word belongs to translates {matches}; partition property refuted")
    return matches[0]


def line_to_codeword(line, n: int) -> CodewordXY:
    """Weight-3 word of a PG(n,2) line under the coordinate identification
    (a,0) -> X-part a, (y,1) -> Y-part y."""
    xm = ym = 0
    for p in line:
        p = int(p)
        if p >> n:
            ym |= 1 << (p & ((1 << n) - 1))
        else:
            xm |= 1 << p
    return CodewordXY(n, xm, ym)


def codeword_to_line(c: CodewordXY):
    if c.weight != 3:
        raise ValueError("only weight-3 words correspond to lines")
    pts = [b for b in _bits(c.xmask)] + [(1 << c.n) | b for b in _bits(c.ymask)]
    return tuple(sorted(pts))


def partition_parallelism(f: VBF) -> Parallelism:
    """Spreads of the translate partition: group the weight-3 Hamming words
    (= lines) by translate label."""
    n = f.n
    if n > PARTITION_MAX_N:
        raise DegreeTooLarge(f"translate partition capped at n={PARTITION_MAX_N}")
    class_map: dict[int, list] = {}
    for line in all_lines(n):
        label = assign_translate(f, line_to_codeword(line, n))
        if label == BASE_LABEL:
            raise InvariantViolation(
                f"weight-3 word of line {line} lies in the base code; its minimum "
                "distance cannot be 5")
        class_map.setdefault(label, []).append(line)
    return make_parallelism(n, f.ctx.modulus, class_map)


def sample_hamming_word(n: int, rng) -> CodewordXY:
    """Uniform random Hamming word: draw a uniform word of full length and
    round it to the unique codeword at distance <= 1 (the code is perfect)."""
    size = 1 << n
    xmask = rng.getrandbits(size - 1) << 1
    ymask = rng.getrandbits(size)
    s = _xor_indices(xmask) ^ _xor_indices(ymask)
    b = ymask.bit_count() & 1
    if b:
        ymask ^= 1 << s
    elif s:
        xmask ^= 1 << s
    return CodewordXY(n, xmask, ymask)


def partition_audit(f: VBF, samples: int, rng) -> dict:
    """Label `samples` random Hamming words; any uniqueness failure raises."""
    counts: dict[int, int] = {}
    for _ in range(samples):
        label = assign_translate(f, sample_hamming_word(f.n, rng))
        counts[label] = counts.get(label, 0) + 1
    return {"samples": samples, "labels_seen": len(counts), "counts": counts}


def translate_partition_parts(f: VBF, code: list[CodewordXY] | None = None) -> dict[int, list[CodewordXY]]:
    """The full partition {P} + {P + t_a} at n = 3, as explicit word lists.

    `code` may be an imported word list defining the base code; if it does
    not contain the zero word it is shifted by its first word first.
    """
    n = f.n
    if code is None:
        code = enumerate_preparata(f)
        member = None
    else:
        code = list(code)
        zero = CodewordXY(n, 0, 0)
        if zero not in code:
            code = [w ^ code[0] for w in code]
        member = {(w.xmask, w.ymask) for w in code}
    tset = translates(n)
    vectors = {a: tset.vector(a) for a in tset.labels}
    parts: dict[int, list[CodewordXY]] = {label: [] for label in range(1 << n)}
    for w in enumerate_hamming(n):
        if member is None:
            label = assign_translate(f, w)
        else:
            hits = [0] if (w.xmask, w.ymask) in member else []
            for a in tset.labels:
                s = w ^ vectors[a]
                if (s.xmask, s.ymask) in member:
                    hits.append(a)
            if not hits:
                raise NoTranslateFound("imported code does not tile the Hamming code")
            if len(hits) > 1:
                raise MultipleTranslatesFound(f"imported code overlaps translates {hits}")
            label = hits[0]
        parts[label].append(w)
    return parts


# ---------------------------------------------------------------------------
# Codeword files: one `<hexX>:<hexY>` pair per line.
# ---------------------------------------------------------------------------

def store_codewords(words, path):
    with open(path, "w") as fh:
        for w in words:
            fh.write(f"{w.xmask:x}:{w.ymask:x}\n")


def load_codewords(path, n: int) -> list[CodewordXY]:
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                xs, ys = raw.split(":")
                out.append(CodewordXY(n, int(xs, 16), int(ys, 16)))
            except ValueError as exc:
                raise MalformedCodewordFile(f"{path}:{lineno}: bad codeword line {raw!r}") from exc
    return out
