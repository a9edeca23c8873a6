"""Relaxed coloring conditions and the scan over non-quadratic APN
permutations.

Three conditions on a function f (with H_x the derivative image in
direction x) are equivalent:

  (a) the line coloring induced by f is a parallelism;
  (b) f is an APN permutation with f(x) not in H_x + H_x for all x != 0;
  (c) exactly one of {a, f(x) + a} lies in H_x, for all x != 0 and all a.

The check computes whichever of the three are within their size caps and
insists the computed ones agree; a disagreement would refute the
equivalence and is raised loudly instead of being reported.

Functions are expected to fix 0; an input with f(0) != 0 fails all three
conditions uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coloring import PARALLELISM_MAX_N, build_parallelism
from .errors import InconsistentColoring, InvariantViolation, ZeroColor
from .geometry import verify_parallelism
from .vbf import VBF, algebraic_degree, is_apn, is_permutation

SUMSET_MAX_N = 12


@dataclass(frozen=True)
class RelaxedReport:
    function_id: str
    n: int
    is_apn: bool
    is_perm: bool
    degree: int
    cond_parallelism: bool | None  # (a); None = skipped
    cond_sumset: bool | None       # (b)
    cond_coset: bool | None        # (c)

    @property
    def satisfies(self) -> bool:
        computed = [c for c in (self.cond_parallelism, self.cond_sumset, self.cond_coset)
                    if c is not None]
        return bool(computed) and all(computed)

    def computed_conditions(self) -> list[bool]:
        return [c for c in (self.cond_parallelism, self.cond_sumset, self.cond_coset)
                if c is not None]


def _cond_sumset(f: VBF) -> bool:
    """f(x) not in H_x + H_x for every x != 0 (plus APN permutation)."""
    arr = f.as_array()
    order = arr.size
    idx = np.arange(order, dtype=np.int64)
    for x in range(1, order):
        h = np.unique(arr[idx ^ x] ^ arr)
        hit = np.zeros(order, dtype=bool)
        hit[(h[:, None] ^ h[None, :]).ravel()] = True
        if hit[arr[x]]:
            return False
    return True


def _cond_coset(f: VBF) -> bool:
    """|{a, f(x)+a} intersect H_x| = 1 for every x != 0 and every a."""
    arr = f.as_array()
    order = arr.size
    idx = np.arange(order, dtype=np.int64)
    a = np.arange(order, dtype=np.int64)
    for x in range(1, order):
        member = np.zeros(order, dtype=bool)
        member[arr[idx ^ x] ^ arr] = True
        fx = int(arr[x])
        if fx == 0:
            counts = member[a].astype(np.int8)
        else:
            counts = member[a].astype(np.int8) + member[a ^ fx]
        if not (counts == 1).all():
            return False
    return True


def relaxed_check(f: VBF, function_id: str = "") -> RelaxedReport:
    n = f.n
    apn = is_apn(f)
    perm = is_permutation(f)
    degree = algebraic_degree(f)

    cond_b = cond_c = None
    if n <= SUMSET_MAX_N:
        cond_b = apn and perm and f.normalized and _cond_sumset(f)
        cond_c = _cond_coset(f) if f.normalized else False

    cond_a = None
    if n <= PARALLELISM_MAX_N:
        try:
            cond_a = verify_parallelism(build_parallelism(f))
        except (ZeroColor, InconsistentColoring):
            cond_a = False

    report = RelaxedReport(function_id, n, apn, perm, degree, cond_a, cond_b, cond_c)
    computed = report.computed_conditions()
    if len(set(computed)) > 1:
        raise InvariantViolation(
            f"relaxed conditions disagree for {function_id or 'function'}: "
            f"parallelism={cond_a} sumset={cond_b} coset={cond_c}")
    return report


def relaxed_scan(functions) -> list[RelaxedReport]:
    """One report per (id, VBF) pair, in input order."""
    return [relaxed_check(f, function_id=fid) for fid, f in functions]


def scan_summary(reports) -> dict:
    sat = [r.function_id for r in reports if r.satisfies]
    return {
        "total": len(reports),
        "satisfying": sat,
        "satisfying_non_quadratic": [r.function_id for r in reports
                                     if r.satisfies and r.degree != 2],
    }


def report_csv_rows(reports) -> list[str]:
    def cell(v):
        return "skipped" if v is None else str(bool(v)).lower()

    rows = ["function,n,degree,apn,permutation,cond_parallelism,cond_sumset,cond_coset,satisfies"]
    for r in reports:
        rows.append(",".join([
            r.function_id, str(r.n), str(r.degree),
            str(r.is_apn).lower(), str(r.is_perm).lower(),
            cell(r.cond_parallelism), cell(r.cond_sumset), cell(r.cond_coset),
            str(r.satisfies).lower(),
        ]))
    return rows
