"""Invariant grid behind ``fingeo verify``.

Each check family yields ``Check`` records; ``run_grid`` collects them for
every geometry with q <= max_q and n <= max_n.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

from . import codes, decoder, linalg, wenger
from .characters import make_context, rank_via_characters, verify_lemmas
from .geometry import GeomConfig, count_h_k, dual_zero_count, rank_formula
from .gf import field_create, prime_power, primes_excluding
from .ksets import build_kset, is_hyperoval

GRID_Q = (2, 3, 4, 5, 7, 8, 9)
SPAN_MAX_LINES = 2000


@dataclass(frozen=True)
class Check:
    name: str
    case: str
    ok: bool
    detail: str = ""


def builtin_specs(cfg: GeomConfig) -> list[str]:
    specs = ["full", "line", "rnc"]
    if cfg.n == 3 and cfg.fld.p == 2:
        specs.append("hyperoval")
    return specs


def ksets_for(cfg: GeomConfig, n_random: int, seed: int):
    out = [build_kset(cfg, s) for s in builtin_specs(cfg)]
    H = cfg.num_h_points
    for i in range(n_random):
        # sizes cycle through [1, |H|] deterministically
        m = 1 + (seed * 7919 + i * 104729) % H
        out.append(build_kset(cfg, f"random:{m}:{seed + i}"))
    return out


def _case(cfg, K) -> str:
    return f"q={cfg.q} n={cfg.n} K={K.tag}({len(K)})"


def check_rank_identity(cfg: GeomConfig, K) -> list[Check]:
    p = cfg.fld.p
    N = codes.incidence_for(cfg, K)
    formula = rank_formula(cfg, K)
    dz = dual_zero_count(cfg, K)
    ranks = [linalg.rank_mod(N, ell).rank for ell in primes_excluding(p, 2)]
    chars = [rank_via_characters(make_context(p, ell), cfg, K) for ell in primes_excluding(p, 2, congruent_one_mod=p)]
    ok = len(set(ranks + chars + [formula, dz])) == 1
    return [Check("rank-identity", _case(cfg, K), ok, f"ranks={ranks} chars={chars} formula={formula} dual_zero={dz}")]


def check_p_rank(cfg: GeomConfig, K) -> list[Check]:
    N = codes.incidence_for(cfg, K)
    rp = linalg.rank_mod(N, cfg.fld.p).rank
    r0 = codes.rank_report(cfg, K, 0)
    return [Check("p-rank<=char0", _case(cfg, K), rp <= r0.rank and r0.certified, f"{rp} <= {r0.rank} ({r0.method})")]


def check_words(cfg: GeomConfig, K) -> list[Check]:
    out = []
    q, n = cfg.q, cfg.n
    planes = codes.enumerate_plane_words(cfg, K, 0)
    expected = comb(len(K), 2) * q ** (n - 2)
    ok = len(planes) == expected and all(w.weight == 2 * q and codes.is_codeword(cfg, K, w) for w in planes)
    out.append(Check("plane-words", _case(cfg, K), ok, f"{len(planes)} words"))
    caps = codes.enumerate_capacitor_words(cfg, K, 0)
    ok = all(w.weight == 2 * q ** (n - 1) and codes.is_codeword(cfg, K, w) for w in caps)
    out.append(Check("capacitor-words", _case(cfg, K), ok, f"{len(caps)} words"))
    thetas = codes.valid_functionals(cfg, K)
    if len(K) and len(thetas):
        d = len(codes.span_basis(cfg, K)) - 1
        w = codes.d_capacitor_word(cfg, K, codes.CapacitorSpec(tuple(int(x) for x in thetas[0]), 1, 0, True), 0)
        out.append(Check("d-capacitor", _case(cfg, K), w.weight == 2 * q**d and codes.is_codeword(cfg, K, w), f"d={d}"))
    return out


def check_spanning(cfg: GeomConfig, K) -> list[Check]:
    N = codes.incidence_for(cfg, K)
    if N.n_cols > SPAN_MAX_LINES:
        return []
    ell = primes_excluding(cfg.fld.p, 1)[0]
    out = []
    for which in ("plane_words_C", "capacitors_D"):
        rep = codes.verify_spanning(cfg, K, which, ell)
        out.append(Check(f"span-{which}", _case(cfg, K), rep.equal, f"{rep.span_dim} vs {rep.code_dim}"))
    return out


def check_min_weight_floors(cfg: GeomConfig, K, budget: int = 20000) -> list[Check]:
    out = []
    for alphabet in (cfg.fld.p, primes_excluding(cfg.fld.p, 1)[0]):
        for which in ("C", "D"):
            rep = codes.min_weight(cfg, K, which, alphabet, budget)
            if rep.dim == 0 or not rep.exact:
                continue
            floor = cfg.q + 1 if which == "C" else len(K) + 1
            out.append(Check(f"min-weight-{which}", _case(cfg, K) + f" char={alphabet}", rep.value >= floor,
                             f"d={rep.value} floor={floor}"))
    return out


def geometry_checks(q: int, n: int, n_random: int, seed: int) -> list[Check]:
    p, e = prime_power(q)
    cfg = GeomConfig(field_create(p, e), n)
    out = []
    for K in ksets_for(cfg, n_random, seed):
        out += check_rank_identity(cfg, K)
        out += check_p_rank(cfg, K)
        out += check_words(cfg, K)
        out += check_spanning(cfg, K)
        if cfg.num_points <= 64:
            out += check_min_weight_floors(cfg, K)
    return out


def global_checks(max_q: int, max_n: int) -> list[Check]:
    out = []
    for pen in ((2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3)):
        rep = verify_lemmas(*pen)
        out.append(Check("character-lemma", "p={} e={} n={}".format(*pen), rep.ok, f"{rep.checks} checks"))
    for q in (x for x in GRID_Q if x <= max_q):
        for n in range(2, max_n + 1):
            ell = primes_excluding(prime_power(q)[0], 1)[0]
            rep = wenger.wenger_verify(n, q, ell)
            out.append(Check("wenger", f"q={q} n={n}", rep.consistent, f"rank={rep.matrix_rank}"))
    for q in (x for x in (2, 4, 8) if x <= max_q):
        cfg = GeomConfig(field_create(2, prime_power(q)[1]), 3)
        K = build_kset(cfg, "hyperoval")
        r = linalg.rank_mod(codes.incidence_for(cfg, K), 3).rank
        stable = all(linalg.rank_mod(codes.incidence_for(cfg, K.without(u)), 3).rank == r for u in K)
        out.append(Check("hyperoval", f"q={q}", is_hyperoval(K) and r == 1 + (q - 1) * comb(q + 2, 2) and stable,
                         f"rank={r} h_K={count_h_k(cfg, K)}"))
    for q in (x for x in (4, 5) if x <= max_q):
        p, e = prime_power(q)
        cfg = GeomConfig(field_create(p, e), 2)
        K = build_kset(cfg, "full")
        ok = decoder.checks_are_orthogonal(cfg, K)
        for code in ("C", "D"):
            for t in range(decoder.guaranteed_radius(cfg, K, code) + 1):
                s = decoder.exhaustive_check(cfg, K, code, t)
                ok = ok and s.successes == s.trials
        out.append(Check("osml", f"q={q} n=2 K=full", ok))
    return out


def run_grid(max_q: int = 4, max_n: int = 3, seed: int = 0, n_random: int = 3, threads: int = 1) -> list[Check]:
    cases = [(q, n) for q in GRID_Q if q <= max_q for n in range(2, max_n + 1)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        parts = list(pool.map(lambda c: geometry_checks(c[0], c[1], n_random, seed), cases))
    checks = [c for part in parts for c in part]
    return checks + global_checks(max_q, max_n)
