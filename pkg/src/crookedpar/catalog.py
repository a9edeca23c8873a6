"""Constructors for the known crooked families and the non-quadratic APN
permutations used as search fodder, plus LUT file persistence.

Families:
  gold        x^(2^t+1), n odd, gcd(t, n) = 1
  bcl         x^(2^s+1) + w*x^(2^(i*k) + 2^(t*k+s)) on GF(2^(3k)),
              gcd(6, k) = gcd(3k, s) = 1, i = s*k mod 3, t = 3 - i,
              w of multiplicative order 2^(2k) + 2^k + 1
  trivariate  (x,y,z) -> (x^(q+1) + x*y^q + y*z^q,
                          x*y^q + z^(q+1),
                          x^q*z + y^(q+1) + y^q) on GF(2^m)^3, q = 2^i,
              m odd, not divisible by 7, gcd(i, m) = 1
  inverse     x^(2^n-2), n odd
  kasami      x^(2^(2k)-2^k+1), n odd, gcd(k, n) = 1
  welch       x^(2^t+3), n = 2t+1

The last three are non-quadratic APN permutations; their APN property is
verified at build time rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (MalformedLutFile, ModulusMismatch, NoElementOfRequiredOrder,
                     ParamConstraintViolated)
from .gf2 import FieldCtx, default_ctx, is_irreducible
from .vbf import VBF, is_apn

FAMILIES = ("gold", "bcl", "trivariate", "inverse", "kasami", "welch")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple
    n: int

    def label(self) -> str:
        """Round-trips through parse_function_spec."""
        if self.family in ("gold", "kasami"):
            return f"{self.family}:{self.params[0]}:{self.n}"
        if self.family in ("bcl", "trivariate"):
            return f"{self.family}:{self.params[0]}:{self.params[1]}"
        return f"{self.family}:{self.n}"


def _require(cond: bool, msg: str):
    if not cond:
        raise ParamConstraintViolated(msg)


def gold_spec(t: int, n: int) -> FamilySpec:
    _require(n % 2 == 1, f"gold needs odd n, got {n}")
    _require(t >= 1 and math.gcd(t, n) == 1, f"gold needs gcd(t, n) = 1, got t={t}, n={n}")
    return FamilySpec("gold", (t,), n)


def bcl_spec(s: int, k: int) -> FamilySpec:
    _require(math.gcd(6, k) == 1, f"bcl needs gcd(6, k) = 1, got k={k}")
    _require(math.gcd(3 * k, s) == 1, f"bcl needs gcd(3k, s) = 1, got s={s}, k={k}")
    return FamilySpec("bcl", (s, k), 3 * k)


def trivariate_spec(m: int, i: int) -> FamilySpec:
    _require(m % 2 == 1 and m % 7 != 0, f"trivariate needs m odd and not divisible by 7, got m={m}")
    _require(i >= 1 and math.gcd(i, m) == 1, f"trivariate needs gcd(i, m) = 1, got i={i}, m={m}")
    return FamilySpec("trivariate", (m, i), 3 * m)


def inverse_spec(n: int) -> FamilySpec:
    _require(n % 2 == 1, f"inverse needs odd n, got {n}")
    return FamilySpec("inverse", (), n)


def kasami_spec(k: int, n: int) -> FamilySpec:
    _require(n % 2 == 1, f"kasami needs odd n, got {n}")
    _require(k >= 1 and math.gcd(k, n) == 1, f"kasami needs gcd(k, n) = 1, got k={k}, n={n}")
    return FamilySpec("kasami", (k,), n)


def welch_spec(n: int) -> FamilySpec:
    _require(n % 2 == 1 and n >= 3, f"welch needs odd n >= 3, got {n}")
    return FamilySpec("welch", (), n)


def catalog_build(spec: FamilySpec, ctx: FieldCtx | None = None) -> VBF:
    """Realize a family spec as a LUT over the given (or default) context."""
    if ctx is None:
        ctx = default_ctx(spec.n)
    if ctx.n != spec.n:
        raise ParamConstraintViolated(
            f"{spec.family} expects a degree-{spec.n} field, context has degree {ctx.n}")

    if spec.family == "gold":
        t, = spec.params
        return VBF(ctx, ctx.power_lut((1 << t) + 1))

    if spec.family == "bcl":
        s, k = spec.params
        n = 3 * k
        i = (s * k) % 3
        t = 3 - i
        w_order = (1 << (2 * k)) + (1 << k) + 1
        if ((1 << n) - 1) % w_order != 0:
            raise NoElementOfRequiredOrder(
                f"2^{2 * k}+2^{k}+1 does not divide 2^{n}-1")  # unreachable when params hold
        w = ctx.element_of_order(w_order)
        e1 = (1 << s) + 1
        e2 = (1 << (i * k)) + (1 << (t * k + s))
        lut1 = ctx.power_lut(e1)
        lut2 = ctx.power_lut(e2)
        return VBF(ctx, [lut1[x] ^ ctx.mul(w, lut2[x]) for x in range(ctx.order)])

    if spec.family == "trivariate":
        m, i = spec.params
        sub = default_ctx(m)
        q = 1 << i
        mask = sub.order - 1
        pq = sub.power_lut(q)
        pq1 = sub.power_lut(q + 1)
        mul = sub.mul
        lut = []
        for wv in range(ctx.order):
            x = wv & mask
            y = (wv >> m) & mask
            z = wv >> (2 * m)
            yq = pq[y]
            c1 = pq1[x] ^ mul(x, yq) ^ mul(y, pq[z])
            c2 = mul(x, yq) ^ pq1[z]
            c3 = mul(pq[x], z) ^ pq1[y] ^ yq
            lut.append((c3 << (2 * m)) | (c2 << m) | c1)
        return VBF(ctx, lut)

    if spec.family in ("inverse", "kasami", "welch"):
        n = spec.n
        if spec.family == "inverse":
            e = (1 << n) - 2
        elif spec.family == "kasami":
            k, = spec.params
            e = (1 << (2 * k)) - (1 << k) + 1
        else:
            t = (n - 1) // 2
            e = (1 << t) + 3
        f = VBF(ctx, ctx.power_lut(e))
        if not is_apn(f):
            raise ParamConstraintViolated(
                f"{spec.family} instance over degree {n} failed its APN build check")
        return f

    raise ParamConstraintViolated(f"unknown family {spec.family!r}")


def parse_function_spec(text: str) -> FamilySpec:
    """Parse compact specs: gold:t:n, bcl:s:k, trivariate:m:i, inverse:n,
    kasami:k:n, welch:n."""
    parts = text.split(":")
    fam, args = parts[0], parts[1:]
    try:
        args = [int(a) for a in args]
    except ValueError as exc:
        raise ParamConstraintViolated(f"non-integer parameter in {text!r}") from exc
    try:
        if fam == "gold":
            t, n = args
            return gold_spec(t, n)
        if fam == "bcl":
            s, k = args
            return bcl_spec(s, k)
        if fam == "trivariate":
            m, i = args
            return trivariate_spec(m, i)
        if fam == "inverse":
            n, = args
            return inverse_spec(n)
        if fam == "kasami":
            k, n = args
            return kasami_spec(k, n)
        if fam == "welch":
            n, = args
            return welch_spec(n)
    except ValueError as exc:
        raise ParamConstraintViolated(f"wrong parameter count in {text!r}") from exc
    raise ParamConstraintViolated(f"unknown family in {text!r}")


def build_from_string(text: str) -> VBF:
    return catalog_build(parse_function_spec(text))


# ---------------------------------------------------------------------------
# LUT files: line 1 "n=<k>", line 2 "modulus=<hex>", then 2^k hex words in
# index order.  Round trips must be bit exact.
# ---------------------------------------------------------------------------

def lut_store(f: VBF, path):
    with open(path, "w") as fh:
        fh.write(f"n={f.ctx.n}\n")
        fh.write(f"modulus={f.ctx.modulus:x}\n")
        for i in range(0, len(f.lut), 16):
            fh.write(" ".join(f"{v:x}" for v in f.lut[i:i + 16]) + "\n")


def lut_load(path, expect_ctx: FieldCtx | None = None) -> VBF:
    with open(path) as fh:
        lines = fh.read().split("\n")
    if len(lines) < 2 or not lines[0].startswith("n=") or not lines[1].startswith("modulus="):
        raise MalformedLutFile(f"{path}: missing n=/modulus= header")
    try:
        n = int(lines[0][2:])
        modulus = int(lines[1][8:], 16)
    except ValueError as exc:
        raise MalformedLutFile(f"{path}: unparseable header") from exc
    if n < 1 or modulus.bit_length() - 1 != n or not is_irreducible(modulus, n):
        raise MalformedLutFile(f"{path}: header modulus {modulus:#x} is not irreducible of degree {n}")
    ctx = FieldCtx(n, modulus)
    if expect_ctx is not None and ctx != expect_ctx:
        raise ModulusMismatch(
            f"{path}: file is over degree {n} modulus {modulus:#x}, "
            f"expected degree {expect_ctx.n} modulus {expect_ctx.modulus:#x}")
    tokens = " ".join(lines[2:]).split()
    if len(tokens) != ctx.order:
        raise MalformedLutFile(f"{path}: expected {ctx.order} LUT words, found {len(tokens)}")
    try:
        lut = [int(tok, 16) for tok in tokens]
    except ValueError as exc:
        raise MalformedLutFile(f"{path}: non-hex LUT word") from exc
    if any(not 0 <= v < ctx.order for v in lut):
        raise MalformedLutFile(f"{path}: LUT word out of range")
    return VBF(ctx, lut)
