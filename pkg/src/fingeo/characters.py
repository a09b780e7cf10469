"""Additive characters of V = GF(q)^n with values in GF(l), l = 1 mod p.

The character attached to a functional theta is
``v -> omega ** Trace(theta(v))`` where omega has multiplicative order p
in GF(l).  Everything is exact modular arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .gf import Field, field_create, is_prime
from .geometry import GeomConfig, h_point_array, point_coords, point_index

FULL_CLOSURE_LIMIT = 4096


class CharacterError(ValueError):
    pass


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(ell: int) -> int:
    """Smallest generator of GF(ell)^*."""
    factors = _prime_factors(ell - 1)
    for g in range(1, ell):
        if all(pow(g, (ell - 1) // r, ell) != 1 for r in factors):
            return g
    raise CharacterError(f"no primitive root mod {ell}")  # unreachable for primes


@dataclass(frozen=True)
class CharacterContext:
    p: int
    ell: int
    omega: int

    def powers(self) -> np.ndarray:
        """``omega ** k mod ell`` for k in [0, p)."""
        return np.array([pow(self.omega, k, self.ell) for k in range(self.p)], dtype=np.int64)


def make_context(p: int, ell: int) -> CharacterContext:
    if not is_prime(p):
        raise CharacterError(f"{p} is not prime")
    if not is_prime(ell):
        raise CharacterError(f"{ell} is not prime")
    if ell % p != 1:
        raise CharacterError(f"GF({ell}) has no primitive {p}-th root of unity: {ell} != 1 mod {p}")
    omega = pow(primitive_root(ell), (ell - 1) // p, ell)
    return CharacterContext(p, ell, omega)


def _character_values(ctx: CharacterContext, fld: Field, functionals: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """(len(functionals), len(vectors)) table of lambda_theta(v) in GF(ell)."""
    tr = fld.vtrace(fld.dot(functionals, vectors.T))
    return ctx.powers()[tr]


def check_subspace(cfg: GeomConfig, W: np.ndarray, samples: int = 2000, seed: int = 0) -> None:
    """Raise unless W is closed under addition and scalar multiplication."""
    fld = cfg.fld
    idx = point_index(cfg, W)
    members = set(int(i) for i in idx)
    if len(members) != len(W):
        raise CharacterError("subspace listing has repeated vectors")
    size, q = len(W), cfg.q
    k = 0
    while q**k < size:
        k += 1
    if q**k != size or 0 not in members:
        raise CharacterError(f"{size} vectors cannot form a GF({q})-subspace")
    if size <= FULL_CLOSURE_LIMIT:
        a, b = np.arange(size).repeat(size), np.tile(np.arange(size), size)
    else:
        rng = np.random.default_rng(seed)
        a, b = rng.integers(0, size, samples), rng.integers(0, size, samples)
    sums = point_index(cfg, fld.vadd(W[a], W[b]))
    scal = point_index(cfg, fld.vmul(np.arange(q)[:, None, None], W[None, :, :])).ravel()
    if not set(int(i) for i in sums) <= members or not set(int(i) for i in scal) <= members:
        raise CharacterError("vectors are not closed under the subspace operations")


def subspace_char_sum(ctx: CharacterContext, cfg: GeomConfig, W, theta) -> int:
    """``sum over w in W of lambda_theta(w)``, as a residue mod ell."""
    if ctx.p != cfg.fld.p:
        raise CharacterError("context characteristic differs from the geometry's")
    W = np.asarray(W, dtype=np.int64).reshape(-1, cfg.n)
    check_subspace(cfg, W)
    vals = _character_values(ctx, cfg.fld, np.asarray(theta, dtype=np.int64)[None, :], W)
    return int(vals.sum() % ctx.ell)


def rank_via_characters(ctx: CharacterContext, cfg: GeomConfig, K) -> int:
    """Number of characters that are nonroots of some line through the origin.

    For each direction u of K the line through 0 is the subspace {t u}; a
    character is a nonroot of its indicator iff the character sum over it
    is nonzero.
    """
    if ctx.p != cfg.fld.p or ctx.ell == ctx.p:
        raise CharacterError("need ell != p and a context for the geometry's characteristic")
    fld = cfg.fld
    thetas = point_coords(cfg)
    hit = np.zeros(len(thetas), dtype=bool)
    t = np.arange(cfg.q)
    for u in K.directions if hasattr(K, "directions") else K:
        W = fld.vmul(t[:, None], np.asarray(u, dtype=np.int64)[None, :])
        sums = _character_values(ctx, fld, thetas, W).sum(axis=1) % ctx.ell
        hit |= sums != 0
    return int(hit.sum())


def subspaces_upto_dim2(cfg: GeomConfig) -> list[np.ndarray]:
    """Every GF(q)-subspace of V of dimension 0, 1 or 2 (each listed once)."""
    fld = cfg.fld
    H = h_point_array(cfg)
    t = np.arange(cfg.q)
    out = [np.zeros((1, cfg.n), dtype=np.int64)]
    out += [fld.vmul(t[:, None], h[None, :]) for h in H]
    seen = set()
    for a, b in combinations(range(len(H)), 2):
        pts = fld.vadd(fld.vmul(t[:, None, None], H[a][None, None, :]), fld.vmul(t[None, :, None], H[b][None, None, :]))
        pts = pts.reshape(-1, cfg.n)
        key = frozenset(int(i) for i in point_index(cfg, pts))
        if key not in seen:
            seen.add(key)
            out.append(pts)
    return out


@dataclass(frozen=True)
class LemmaReport:
    checks: int
    kernel_violations: int
    trace_violations: int

    @property
    def ok(self) -> bool:
        return self.kernel_violations == 0 and self.trace_violations == 0


def verify_lemmas(p: int, e: int, n: int, ell: int | None = None) -> LemmaReport:
    """Exhaustively test the character-sum and trace-image dichotomies.

    For every subspace W of dimension <= 2 and every functional theta:
    the character sum is nonzero iff theta kills W (and then equals |W|),
    and Trace(theta(W)) is {0} iff theta kills W, else all of GF(p).
    """
    fld = field_create(p, e)
    cfg = GeomConfig(fld, n)
    if ell is None:
        ell = next(x for x in range(p + 1, 10**6) if is_prime(x) and x % p == 1)
    ctx = make_context(p, ell)
    thetas = point_coords(cfg)
    checks = kernel_bad = trace_bad = 0
    for W in subspaces_upto_dim2(cfg):
        values = fld.dot(thetas, W.T)
        killed = np.all(values == 0, axis=1)
        sums = ctx.powers()[fld.vtrace(values)].sum(axis=1) % ell
        kernel_bad += int(np.sum((sums != 0) != killed))
        kernel_bad += int(np.sum(killed & (sums != len(W) % ell)))
        traces = fld.vtrace(values)
        for th in range(len(thetas)):
            image = set(int(x) for x in np.unique(traces[th]))
            expected = {0} if killed[th] else set(range(p))
            trace_bad += image != expected
        checks += len(thetas)
    return LemmaReport(checks, kernel_bad, trace_bad)
