"""Command line front end.

Exit codes: 0 = property holds / artifact written, 1 = property refuted,
2 = usage or input error, 3 = budget exceeded.  Randomized audits take an
explicit --seed (fixed default, never time-based) and outputs echo seed
and budget so runs are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field

from . import catalog, codes, coloring, equivalence, geometry, relaxed
from .errors import CrookedparError
from .gf2 import DEFAULT_MODULI, BinMatrix, FieldCtx, default_ctx, is_irreducible
from .vbf import VBF, algebraic_degree, is_apn, is_crooked, is_permutation

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_SEED = 20240601
MODULI_ENV = "CP_DEFAULT_MODULI"


@dataclass
class RunConfig:
    command: str
    subcommand: str | None = None
    function: str | None = None
    left: str | None = None
    right: str | None = None
    lut: str | None = None
    infile: str | None = None
    out: str | None = None
    report: str | None = None
    witness: str | None = None
    code_file: str | None = None
    functions: list[str] = field(default_factory=list)
    fmt: str = "json"
    method: str | None = None
    seed: int = DEFAULT_SEED
    budget: int = equivalence.DEFAULT_BUDGET
    samples: int = 10000
    threads: int = 1


def _meta(cfg: RunConfig) -> dict:
    return {"seed": cfg.seed, "budget": cfg.budget}


def _load_moduli_table() -> dict[int, int]:
    path = os.environ.get(MODULI_ENV)
    if not path:
        return dict(DEFAULT_MODULI)
    table = {}
    with open(path) as fh:
        for raw in fh:
            raw = raw.split("#")[0].strip()
            if not raw:
                continue
            n_str, mod_str = raw.split()
            table[int(n_str)] = int(mod_str, 16)
    return table


def _resolve_function(cfg: RunConfig, text: str | None = None) -> VBF:
    if cfg.lut:
        return catalog.lut_load(cfg.lut)
    spec_text = text or cfg.function
    if not spec_text:
        raise CrookedparError("no function given: use a family spec or --lut")
    spec = catalog.parse_function_spec(spec_text)
    table = _load_moduli_table()
    ctx = FieldCtx(spec.n, table[spec.n]) if spec.n in table else default_ctx(spec.n)
    return catalog.catalog_build(spec, ctx)


# ---------------------------------------------------------------------------
# Parallelism JSON
# ---------------------------------------------------------------------------

def export_parallelism(par: geometry.Parallelism, fmt: str, path, meta: dict | None = None):
    if fmt == "json":
        doc = {
            "n": par.n,
            "point_encoding": "x1<<n|x",
            "modulus": f"{par.modulus:x}",
            "colors": [
                {"color": f"{color:x}", "lines": [list(line) for line in lines]}
                for color, lines in par.classes
            ],
        }
        if meta:
            doc["meta"] = meta
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    elif fmt == "text":
        with open(path, "w") as fh:
            for color, lines in par.classes:
                for p, q, r in lines:
                    fh.write(f"{color:x} {p} {q} {r}\n")
    else:
        raise CrookedparError(f"unsupported parallelism format {fmt!r}")


def load_parallelism(path) -> geometry.Parallelism:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("point_encoding") != "x1<<n|x":
        raise CrookedparError(f"{path}: unknown point encoding")
    class_map = {int(entry["color"], 16): [tuple(line) for line in entry["lines"]]
                 for entry in doc["colors"]}
    return geometry.make_parallelism(int(doc["n"]), int(doc["modulus"], 16), class_map)


def store_witness(w: equivalence.Witness, path, meta: dict | None = None):
    doc = {
        "n": w.n,
        "matrix": [f"{row:x}" for row in w.kappa.matrix.rows],
        "sigma": [f"{v:x}" for v in w.sigma],
    }
    if meta:
        doc["meta"] = meta
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_witness(path) -> equivalence.Witness:
    with open(path) as fh:
        doc = json.load(fh)
    n = int(doc["n"])
    matrix = BinMatrix([int(r, 16) for r in doc["matrix"]], n + 1)
    sigma = tuple(int(v, 16) for v in doc["sigma"])
    return equivalence.Witness(sigma, equivalence.Collineation(matrix))


# ---------------------------------------------------------------------------
# Subcommand bodies
# ---------------------------------------------------------------------------

def _cmd_fn_check(cfg: RunConfig) -> int:
    f = _resolve_function(cfg)
    methods = []
    if cfg.method:
        methods = [cfg.method]
    else:
        methods = ["hyperplane"] if f.n > 7 else ["definition", "hyperplane"]
    crooked = {m: is_crooked(f, method=m) for m in methods}
    report = {
        "function": cfg.function or cfg.lut,
        "n": f.n,
        "apn": is_apn(f),
        "permutation": is_permutation(f),
        "crooked": all(crooked.values()),
        "crooked_by_method": crooked,
        "degree": algebraic_degree(f),
        "meta": _meta(cfg),
    }
    _emit(report, cfg)
    return EXIT_OK if report["crooked"] else EXIT_REFUTED


def _cmd_parallelism(cfg: RunConfig) -> int:
    if cfg.subcommand == "build":
        f = _resolve_function(cfg)
        par = coloring.build_parallelism(f, threads=cfg.threads)
        if not geometry.verify_parallelism(par):
            print("built color classes do not form a parallelism", file=sys.stderr)
            return EXIT_REFUTED
        export_parallelism(par, "json", cfg.out, meta=_meta(cfg))
        print(f"wrote parallelism: {par.spread_count} spreads, {par.line_count()} lines")
        return EXIT_OK
    if cfg.subcommand == "verify":
        par = load_parallelism(cfg.infile)
        ok = geometry.verify_parallelism(par)
        print(f"parallelism {cfg.infile}: {'valid' if ok else 'INVALID'} "
              f"({par.spread_count} spreads, {par.line_count()} lines)")
        return EXIT_OK if ok else EXIT_REFUTED
    if cfg.subcommand == "export":
        par = load_parallelism(cfg.infile)
        export_parallelism(par, cfg.fmt, cfg.out, meta=_meta(cfg) if cfg.fmt == "json" else None)
        return EXIT_OK
    raise CrookedparError(f"unknown parallelism subcommand {cfg.subcommand!r}")


def _cmd_code(cfg: RunConfig) -> int:
    f = _resolve_function(cfg)
    if cfg.subcommand == "enumerate":
        words = codes.enumerate_preparata(f, threads=cfg.threads)
        if cfg.out:
            codes.store_codewords(words, cfg.out)
        dist = codes.min_distance(words)
        print(f"enumerated {len(words)} codewords, min distance {dist}")
        return EXIT_OK if dist == 5 else EXIT_REFUTED
    if cfg.subcommand == "partition":
        par = codes.partition_parallelism(f)
        ok = geometry.verify_parallelism(par)
        report = {"function": cfg.function, "n": f.n,
                  "spreads": par.spread_count, "lines": par.line_count(),
                  "parallelism_valid": ok, "meta": _meta(cfg)}
        if f.n <= 5:
            built = coloring.build_parallelism(f, threads=cfg.threads)
            report["comparison_with_coloring"] = geometry.compare_parallelisms(par, built)
        if cfg.out:
            export_parallelism(par, "json", cfg.out, meta=_meta(cfg))
        _emit(report, cfg, path=cfg.report)
        return EXIT_OK if ok else EXIT_REFUTED
    if cfg.subcommand == "audit":
        if cfg.code_file:
            imported = codes.load_codewords(cfg.code_file, f.n)
            parts = codes.translate_partition_parts(f, imported)
            sizes = sorted(len(v) for v in parts.values())
            total = sum(sizes)
            print(f"imported code tiles the Hamming code: {len(parts)} parts, {total} words")
            return EXIT_OK
        rng = random.Random(cfg.seed)
        audit = codes.partition_audit(f, cfg.samples, rng)
        report = {"function": cfg.function, "n": f.n,
                  "samples": audit["samples"], "labels_seen": audit["labels_seen"],
                  "meta": _meta(cfg)}
        _emit(report, cfg, path=cfg.report)
        return EXIT_OK
    raise CrookedparError(f"unknown code subcommand {cfg.subcommand!r}")


def _cmd_equiv(cfg: RunConfig) -> int:
    fl = _resolve_function(cfg, cfg.left)
    fr = _resolve_function(cfg, cfg.right)
    if cfg.subcommand == "verify":
        w = load_witness(cfg.witness)
        ok = equivalence.verify_witness(fl, fr, w)
        print(f"witness {'verifies' if ok else 'FAILS'}")
        return EXIT_OK if ok else EXIT_REFUTED
    if cfg.subcommand == "search":
        p1 = coloring.build_parallelism(fl, threads=cfg.threads)
        p2 = coloring.build_parallelism(fr, threads=cfg.threads)
        result = equivalence.search_equivalence(p1, p2, budget=cfg.budget)
        note = " (exploratory: n <= 3)" if result.exploratory else ""
        if result.status == "witness":
            if cfg.out:
                store_witness(result.witness, cfg.out, meta=_meta(cfg))
            print(f"equivalent: witness found after {result.nodes} nodes{note}")
            return EXIT_OK
        if result.status == "inequivalent":
            print(f"inequivalent: search space exhausted after {result.nodes} nodes{note}")
            return EXIT_REFUTED
        print(f"undecided: node budget {cfg.budget} exceeded{note}")
        return EXIT_BUDGET
    raise CrookedparError(f"unknown equiv subcommand {cfg.subcommand!r}")


def _cmd_relaxed(cfg: RunConfig) -> int:
    pairs = []
    for text in cfg.functions:
        spec = catalog.parse_function_spec(text)
        pairs.append((spec.label(), catalog.catalog_build(spec)))
    reports = relaxed.relaxed_scan(pairs)
    summary = relaxed.scan_summary(reports)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write("\n".join(relaxed.report_csv_rows(reports)) + "\n")
    print(json.dumps(summary))
    return EXIT_OK


def _cmd_field(cfg: RunConfig) -> int:
    table = _load_moduli_table()
    for n in sorted(table):
        mod = table[n]
        ok = is_irreducible(mod, n)
        print(f"n={n:2d} modulus={mod:#x} {'ok' if ok else 'REDUCIBLE'}")
        if not ok:
            return EXIT_REFUTED
    return EXIT_OK


def _emit(report: dict, cfg: RunConfig, path=None):
    text = json.dumps(report, indent=1)
    target = path or cfg.out
    if target:
        with open(target, "w") as fh:
            fh.write(text + "\n")
    print(text)


def run_command(cfg: RunConfig) -> int:
    handlers = {
        "fn": _cmd_fn_check,
        "parallelism": _cmd_parallelism,
        "code": _cmd_code,
        "equiv": _cmd_equiv,
        "relaxed": _cmd_relaxed,
        "field": _cmd_field,
    }
    return handlers[cfg.command](cfg)


# ---------------------------------------------------------------------------
# argparse wiring
# ---------------------------------------------------------------------------

def _add_function_args(p):
    p.add_argument("--family", choices=catalog.FAMILIES)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--lut", help="LUT file instead of a family spec")


def _function_text(args) -> str | None:
    if not args.family:
        return None
    fam = args.family
    if fam == "gold":
        return f"gold:{args.t}:{args.n}"
    if fam == "bcl":
        return f"bcl:{args.s}:{args.k}"
    if fam == "trivariate":
        return f"trivariate:{args.m}:{args.i}"
    if fam == "kasami":
        return f"kasami:{args.k}:{args.n}"
    return f"{fam}:{args.n}"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crookedpar")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--budget", type=int, default=equivalence.DEFAULT_BUDGET)
    sub = ap.add_subparsers(dest="command", required=True)

    fn = sub.add_parser("fn", help="function property checks")
    fnsub = fn.add_subparsers(dest="subcommand", required=True)
    chk = fnsub.add_parser("check")
    _add_function_args(chk)
    chk.add_argument("--method", choices=["definition", "hyperplane"])
    chk.add_argument("--out")

    par = sub.add_parser("parallelism", help="build/verify/export parallelisms")
    psub = par.add_subparsers(dest="subcommand", required=True)
    pb = psub.add_parser("build")
    _add_function_args(pb)
    pb.add_argument("--out", required=True)
    pv = psub.add_parser("verify")
    pv.add_argument("infile")
    pe = psub.add_parser("export")
    pe.add_argument("--in", dest="infile", required=True)
    pe.add_argument("--out", required=True)
    pe.add_argument("--format", dest="fmt", choices=["json", "text"], default="json")

    code = sub.add_parser("code", help="Preparata-like code workflows")
    csub = code.add_subparsers(dest="subcommand", required=True)
    ce = csub.add_parser("enumerate")
    _add_function_args(ce)
    ce.add_argument("--out")
    cp = csub.add_parser("partition")
    _add_function_args(cp)
    cp.add_argument("--out")
    cp.add_argument("--report")
    ca = csub.add_parser("audit")
    _add_function_args(ca)
    ca.add_argument("--samples", type=int, default=10000)
    ca.add_argument("--code", dest="code_file")
    ca.add_argument("--report")

    eq = sub.add_parser("equiv", help="witness verification and search")
    esub = eq.add_subparsers(dest="subcommand", required=True)
    ev = esub.add_parser("verify")
    ev.add_argument("--left", required=True)
    ev.add_argument("--right", required=True)
    ev.add_argument("--witness", required=True)
    es = esub.add_parser("search")
    es.add_argument("--left", required=True)
    es.add_argument("--right", required=True)
    es.add_argument("--out")

    rx = sub.add_parser("relaxed", help="relaxed-condition scans")
    rsub = rx.add_subparsers(dest="subcommand", required=True)
    rs = rsub.add_parser("scan")
    rs.add_argument("--functions", required=True,
                    help="comma-separated family specs, e.g. inverse:5,kasami:2:7")
    rs.add_argument("--out")

    fld = sub.add_parser("field", help="field utilities")
    fsub = fld.add_subparsers(dest="subcommand", required=True)
    fsub.add_parser("list-moduli")
    return ap


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, subcommand=getattr(args, "subcommand", None))
    cfg.seed = args.seed
    cfg.threads = args.threads
    cfg.budget = args.budget
    cfg.function = _function_text(args) if hasattr(args, "family") else None
    cfg.lut = getattr(args, "lut", None)
    cfg.left = getattr(args, "left", None)
    cfg.right = getattr(args, "right", None)
    cfg.infile = getattr(args, "infile", None)
    cfg.out = getattr(args, "out", None)
    cfg.report = getattr(args, "report", None)
    cfg.witness = getattr(args, "witness", None)
    cfg.code_file = getattr(args, "code_file", None)
    cfg.fmt = getattr(args, "fmt", "json")
    cfg.method = getattr(args, "method", None)
    cfg.samples = getattr(args, "samples", 10000)
    if getattr(args, "functions", None):
        cfg.functions = args.functions.split(",")
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    cfg = config_from_args(args)
    try:
        return run_command(cfg)
    except CrookedparError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(json.dumps({"error": "FileNotFound", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
