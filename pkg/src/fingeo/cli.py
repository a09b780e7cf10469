"""Command-line front end: ``fingeo <command> [options]``.

Output is compact JSON with a fixed key order unless ``--table`` is given.
Exit status: 0 success, 1 failed verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import codes, decoder, verify, wenger
from .characters import verify_lemmas
from .geometry import GeomConfig, count_h_k, dual_zero_count
from .gf import field_create, is_prime, prime_power, primes_excluding
from .incidence import export_alist, export_matrixmarket
from .ksets import build_kset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    budget: int = codes.DEFAULT_BUDGET
    failed: bool = False
    records: list = field(default_factory=list)


def default_budget() -> int:
    raw = os.environ.get("FINGEO_BUDGET")
    if raw is None:
        return codes.DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"FINGEO_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise UsageError("FINGEO_BUDGET must be positive")
    return value


def _geometry(args) -> GeomConfig:
    if args.p is None or args.n is None:
        raise UsageError("--p and --n are required for this command")
    try:
        return GeomConfig(field_create(args.p, args.e), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _characteristic(args, cfg: GeomConfig) -> int:
    if args.char is None:
        return primes_excluding(cfg.fld.p, 1)[0]
    if args.char != 0 and not is_prime(args.char):
        raise UsageError(f"--char must be 0 or a prime, got {args.char}")
    return args.char


def _setup(args):
    cfg = _geometry(args)
    try:
        K = build_kset(cfg, args.kset)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg, K, _characteristic(args, cfg)


# ---------------------------------------------------------------------------
# commands; each returns a JSON-ready dict (insertion order is output order)

def cmd_rank(run: RunConfig) -> dict:
    cfg, K, ell = _setup(run.args)
    rep = codes.rank_report(cfg, K, ell)
    return {"rank": rep.rank, "h_k": count_h_k(cfg, K), "dual_zero": dual_zero_count(cfg, K)}


def cmd_dims(run: RunConfig) -> dict:
    cfg, K, ell = _setup(run.args)
    N = codes.incidence_for(cfg, K)
    dim_c, dim_d = codes.code_dims(cfg, K, ell)
    return {"char": ell, "length_C": N.n_cols, "dim_C": dim_c, "length_D": N.n_rows, "dim_D": dim_d}


def cmd_minweight(run: RunConfig) -> dict:
    cfg, K, ell = _setup(run.args)
    budget = run.args.budget if run.args.budget is not None else run.budget
    rep = codes.min_weight(cfg, K, run.args.code, ell, budget)
    return {"code": rep.code, "char": rep.char, "dim": rep.dim, "exact": rep.exact,
            "min_weight": rep.value, "lower": rep.lower, "upper": rep.upper, "method": rep.method}


def _word_family(cfg, K, kind: str, ell: int) -> list:
    if kind == "plane":
        return codes.enumerate_plane_words(cfg, K, ell)
    if kind == "capacitor":
        return codes.enumerate_capacitor_words(cfg, K, ell)
    if kind == "dcap":
        if not len(K):
            return []
        return [codes.d_capacitor_word(cfg, K, codes.CapacitorSpec(tuple(int(x) for x in th), s, 0, True), ell)
                for th in codes.valid_functionals(cfg, K) for s in range(1, cfg.q)]
    if cfg.n != 2 or cfg.fld.e != 1:
        raise UsageError("kgon words live in AG(2, p); use --n 2 --e 1")
    out = []
    for size in (3, 4):
        kset = codes.kgon_kset(cfg.fld, size)
        if kset.directions == K.directions:
            try:
                out.append(codes._signed(codes.kgon_word(cfg.fld, size).entries, ell, "P"))
            except codes.CodeError as exc:
                raise UsageError(str(exc)) from None
    if not out:
        raise UsageError("kgon words need K = line:0,1;1,0;1,1 (and 1,-1 for the octagon)")
    return out


def cmd_words(run: RunConfig) -> dict:
    args = run.args
    cfg, K, ell = _setup(args)
    words = _word_family(cfg, K, args.kind, ell)
    members = all(codes.is_codeword(cfg, K, w) for w in words)
    out = {"kind": args.kind, "char": ell, "count": len(words),
           "weights": sorted({w.weight for w in words}), "all_codewords": members}
    run.failed = not members
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.writelines(w.to_json() + "\n" for w in words)
    if args.verify_span:
        if args.kind not in ("plane", "capacitor"):
            raise UsageError("--verify-span applies to --kind plane or capacitor")
        if ell == cfg.fld.p:
            raise UsageError(f"--verify-span needs --char different from p = {cfg.fld.p}")
        rep = codes.verify_spanning(cfg, K, args.kind, ell)
        out.update(span_dim=rep.span_dim, code_dim=rep.code_dim, equal=rep.equal)
        run.failed = run.failed or not rep.equal
    return out


def cmd_wenger(run: RunConfig) -> dict:
    args = run.args
    try:
        p, _ = prime_power(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    ell = primes_excluding(p, 1)[0] if args.char is None else args.char
    if ell == p or not is_prime(ell):
        raise UsageError(f"--char must be a prime different from {p}")
    rep = wenger.wenger_verify(args.n, args.q, ell)
    run.failed = not rep.consistent
    if args.edges:
        wenger.export_edge_list(args.n, args.q, args.edges)
    return {"matrix_rank": rep.matrix_rank, "formula": rep.formula_rank,
            "rootless": rep.rootless_count, "consistent": rep.consistent}


def cmd_export(run: RunConfig) -> dict:
    args = run.args
    cfg, K, _ = _setup(args)
    N = codes.incidence_for(cfg, K)
    if args.format == "alist":
        export_alist(N, args.orient, args.out)
    else:
        export_matrixmarket(N, args.out, args.orient)
    rows, cols = N.shape if args.orient == "N" else N.shape[::-1]
    return {"format": args.format, "orient": args.orient, "rows": rows, "cols": cols, "nnz": N.nnz, "path": args.out}


def cmd_decode(run: RunConfig) -> dict:
    args = run.args
    cfg, K, _ = _setup(args)
    try:
        s = decoder.channel_trials(cfg, K, args.code, args.errors, args.trials, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            decoder.write_csv([s], fh)
    out = {f: getattr(s, f) for f in decoder.CSV_FIELDS}
    out["radius"] = decoder.guaranteed_radius(cfg, K, args.code)
    out["success_rate"] = s.success_rate
    run.failed = args.errors <= out["radius"] and s.successes != s.trials
    return out


def cmd_charlemma(run: RunConfig) -> dict:
    args = run.args
    if args.p is None or not is_prime(args.p):
        raise UsageError("--p must be a prime")
    n = 2 if args.n is None else args.n
    aux = args.aux
    if aux is not None and (not is_prime(aux) or aux % args.p != 1):
        raise UsageError(f"--aux must be a prime congruent to 1 mod {args.p}")
    rep = verify_lemmas(args.p, args.e, n, aux)
    run.failed = not rep.ok
    return {"checks": rep.checks, "kernel_violations": rep.kernel_violations,
            "trace_violations": rep.trace_violations, "ok": rep.ok}


def cmd_verify(run: RunConfig) -> dict:
    args = run.args
    if args.max_q < 2 or args.max_n < 2:
        raise UsageError("--max-q and --max-n must be at least 2")
    checks = verify.run_grid(args.max_q, args.max_n, args.seed, args.random, args.threads)
    failures = [c for c in checks if not c.ok]
    run.failed = bool(failures)
    run.records = checks
    return {"checks": len(checks), "passed": len(checks) - len(failures),
            "failures": [{"name": c.name, "case": c.case, "detail": c.detail} for c in failures]}


COMMANDS = {
    "rank": cmd_rank, "dims": cmd_dims, "minweight": cmd_minweight, "words": cmd_words,
    "wenger": cmd_wenger, "export": cmd_export, "decode": cmd_decode,
    "charlemma": cmd_charlemma, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--threads", type=int, default=1, help="worker threads for partitionable work")

    geom = argparse.ArgumentParser(add_help=False)
    geom.add_argument("--p", type=int, help="characteristic of GF(q)")
    geom.add_argument("--e", type=int, default=1, help="extension degree, q = p^e")
    geom.add_argument("--n", type=int, help="affine dimension")
    geom.add_argument("--kset", default="full",
                      help="full | line[:pts|:minus:pts] | hyperoval | rnc | random:<m>:<seed> | file:<path>")
    geom.add_argument("--char", type=int, help="0 or a prime; default is the smallest prime != p")

    parser = argparse.ArgumentParser(prog="fingeo", description="Linear representations of finite geometries and their LDPC codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    both = [common, geom]
    sub.add_parser("rank", parents=both, help="rank of N with h_K and dual-zero counts")
    sub.add_parser("dims", parents=both, help="lengths and dimensions of C and D")
    p = sub.add_parser("minweight", parents=both, help="minimum weight of C or D")
    p.add_argument("--code", choices=("C", "D"), required=True)
    p.add_argument("--budget", type=int, help="enumeration budget (default: FINGEO_BUDGET or 2000000)")
    p = sub.add_parser("words", parents=both, help="generate and check special codewords")
    p.add_argument("--kind", choices=("plane", "capacitor", "dcap", "kgon"), required=True)
    p.add_argument("--verify-span", action="store_true")
    p.add_argument("--out", help="write the words as JSON lines")
    p = sub.add_parser("wenger", parents=[common], help="Wenger graph rank identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--char", type=int)
    p.add_argument("--edges", help="also write the bipartite edge list here")
    p = sub.add_parser("export", parents=both, help="write N in alist or MatrixMarket form")
    p.add_argument("--format", choices=("alist", "mtx"), required=True)
    p.add_argument("--orient", choices=("N", "NT"), default="N")
    p.add_argument("--out", required=True)
    p = sub.add_parser("decode", parents=both, help="majority-logic decoding trials")
    p.add_argument("--code", choices=("C", "D"), required=True)
    p.add_argument("--errors", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="also write the summary as CSV")
    p = sub.add_parser("charlemma", parents=[common], help="exhaustive character-sum checks")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--aux", type=int, help="prime l = 1 mod p carrying the characters")
    p = sub.add_parser("verify", parents=[common], help="run the invariant grid")
    p.add_argument("--max-q", type=int, default=4)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=3, help="random K-sets per geometry")
    return parser


def _format_table(run: RunConfig, result: dict) -> str:
    if run.command == "verify":
        lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name:<22} {c.case}  {c.detail}" for c in run.records]
        lines.append(f"{result['passed']}/{result['checks']} checks passed")
        return "\n".join(lines)
    width = max(len(k) for k in result)
    return "\n".join(f"{k:<{width}}  {json.dumps(v)}" for k, v in result.items())


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "threads", 1) < 1:
        print("fingeo: error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = RunConfig(args.command, args, budget=default_budget())
        result = COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"fingeo {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _format_table(cfg, result) if args.table else json.dumps(result, separators=(",", ":"))
    print(text, file=stdout)
    return EXIT_FAIL if cfg.failed else EXIT_OK


def main() -> None:
    sys.exit(run())
