"""Exact rank, kernels and spans over GF(l) and over the rationals.

Modular elimination is blocked: rows are reduced in batches against the
running reduced echelon basis with one matrix product per batch.  Products
go through float64 BLAS whenever every partial sum stays below 2**53, so
they are exact; otherwise they fall back to int64 or Python integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .gf import is_prime, primes_excluding
from .incidence import SparseIncidence

BAREISS_CUTOFF = 512
BATCH = 256
_EXACT_FLOAT = 2**53


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class RankReport:
    characteristic: int
    rank: int
    method: str
    certified: bool


def _dense(M) -> np.ndarray:
    if isinstance(M, SparseIncidence):
        return M.to_dense()
    A = np.asarray(M)
    if A.ndim != 2:
        raise LinalgError(f"expected a matrix, got shape {A.shape}")
    return A


def _check_prime(ell: int) -> None:
    if not is_prime(ell):
        raise LinalgError(f"{ell} is not prime")


def mulmod(A: np.ndarray, B: np.ndarray, ell: int) -> np.ndarray:
    """``A @ B mod ell`` for nonnegative residues, exact."""
    k = A.shape[1]
    if k == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    sq = (ell - 1) ** 2
    if sq == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if sq < _EXACT_FLOAT:
        step = max(1, (_EXACT_FLOAT - 1) // sq)
        Af = A.astype(np.float64)
        Bf = B.astype(np.float64)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.float64)
        for s in range(0, k, step):
            out = np.fmod(out + np.fmod(Af[:, s:s + step] @ Bf[s:s + step], ell), ell)
        return out.astype(np.int64)
    return (A.astype(object) @ B.astype(object)) % ell


def _rref_block(V: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    V = V.copy()
    big = (ell - 1) ** 2 >= 2**63
    if big:
        V = V.astype(object)
    m = V.shape[0]
    pivots = []
    r = 0
    while r < m:
        active = np.flatnonzero((V[r:] != 0).any(axis=0))
        if len(active) == 0:
            break
        c = int(active[0])
        i = r + int(np.flatnonzero(V[r:, c] != 0)[0])
        if i != r:
            V[[r, i]] = V[[i, r]]
        V[r] = (V[r] * pow(int(V[r, c]), -1, ell)) % ell
        col = V[:, c].copy()
        col[r] = 0
        nz = np.flatnonzero(col != 0)
        if len(nz):
            V[nz] = (V[nz] - col[nz, None] * V[r][None, :]) % ell
        pivots.append(c)
        r += 1
    return V[:r], pivots


def rref_mod(A, ell: int, batch: int = BATCH) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(ell).

    Returns the nonzero rows (ordered by pivot column) and the pivot columns.
    Deterministic: pivots are taken at the first eligible row.
    """
    _check_prime(ell)
    A = np.asarray(A)
    A = (A.astype(object) % ell) if (ell - 1) ** 2 >= 2**63 else (A.astype(np.int64) % ell)
    m, w = A.shape
    E = np.zeros((0, w), dtype=A.dtype)
    piv: list[int] = []
    for start in range(0, m, batch):
        if len(piv) == w:
            break
        V = A[start:start + batch]
        if piv:
            V = (V - mulmod(V[:, piv], E, ell)) % ell
        R, newp = _rref_block(V, ell)
        if newp:
            if len(E):
                E = (E - mulmod(E[:, newp], R, ell)) % ell
            E = np.vstack([E, R])
            piv += newp
    order = np.argsort(piv, kind="stable")
    return E[order], [piv[i] for i in order]


def _rank_mod_dense(A: np.ndarray, ell: int) -> int:
    if A.size == 0:
        return 0
    if A.shape[1] > A.shape[0]:
        A = A.T
    return len(rref_mod(A, ell)[1])


def rank_mod(M, ell: int) -> RankReport:
    _check_prime(ell)
    return RankReport(ell, _rank_mod_dense(_dense(M), ell), "elimination", True)


_INT64_SAFE = 2**31 - 1


def bareiss_rank(A) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Runs in int64 while every entry is below 2**31 in magnitude (so the
    two products in an update cannot overflow) and switches to Python
    integers for good once that bound is crossed.
    """
    A = np.array(A, dtype=object)
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = A.T.copy()
    if np.abs(A).max() <= _INT64_SAFE:
        A = A.astype(np.int64)
    m, n = A.shape
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = A[r, c]
        if r + 1 < m:
            below = A[r + 1:, c:c + 1]
            A[r + 1:, c + 1:] = (piv * A[r + 1:, c + 1:] - below * A[r:r + 1, c + 1:]) // prev
            A[r + 1:, c] = 0
            if A.dtype != object and np.abs(A[r + 1:, c + 1:]).max(initial=0) > _INT64_SAFE:
                A = A.astype(object)
        prev = piv
        r += 1
    return r


def _exact_product(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Integer product, in int64 when no partial sum can overflow."""
    bound = int(np.abs(X).max(initial=0)) * int(np.abs(Y).max(initial=0)) * X.shape[1]
    if X.dtype != object and Y.dtype != object and bound < 2**62:
        return X.astype(np.int64) @ Y.astype(np.int64)
    return X.astype(object).dot(Y.astype(object))


def rank_char0(M, bareiss_cutoff: int = BAREISS_CUTOFF, p: int | None = None, left_kernel=None) -> RankReport:
    """Rank over Q.

    With ``left_kernel`` (integer vectors w claimed to satisfy ``M^T w = 0``)
    the rank is pinned between two certified bounds: the rank modulo a prime
    never exceeds the rational rank, and every verified kernel family caps
    it at ``rows - rank(family)``.  When the bounds meet no elimination over
    Q is needed.  Otherwise Bareiss elimination runs when the short side is
    at most ``bareiss_cutoff``; beyond that the result is the largest rank
    modulo three primes, reported uncertified.
    """
    A = _dense(M)
    if p is None and isinstance(M, SparseIncidence) and M.cfg is not None:
        p = M.cfg.fld.p
    primes = primes_excluding(p or 0, 3)
    if left_kernel is not None:
        lower = _rank_mod_dense(A % primes[0], primes[0])
        W = _stack(left_kernel) if len(left_kernel) else np.zeros((0, A.shape[0]), dtype=np.int64)
        if W.shape[1] != A.shape[0]:
            raise LinalgError("kernel vectors must have one entry per row")
        if len(W) and np.any(_exact_product(W, A) != 0):
            raise LinalgError("supplied vectors are not in the left kernel over Z")
        upper = A.shape[0] - (_rank_mod_dense(W % primes[0], primes[0]) if len(W) else 0)
        if lower == upper:
            return RankReport(0, lower, "kernel-certificate", True)
    if min(A.shape) <= bareiss_cutoff:
        return RankReport(0, bareiss_rank(A), "bareiss", True)
    ranks = [_rank_mod_dense(A % ell, ell) for ell in primes]
    return RankReport(0, max(ranks), "multiprime", False)


def rank(M, characteristic: int) -> RankReport:
    return rank_char0(M) if characteristic == 0 else rank_mod(M, characteristic)


def kernel_basis_mod(M, ell: int) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` over GF(ell), one vector per row."""
    A = _dense(M)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref_mod(A, ell)
    free = [c for c in range(ncols) if c not in set(piv)]
    B = np.zeros((len(free), ncols), dtype=R.dtype)
    for j, f in enumerate(free):
        B[j, f] = 1
        B[j, piv] = (-R[:, f]) % ell
    return B


def rref_rational(A) -> tuple[list[list[Fraction]], list[int]]:
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(A)]
    ncols = len(rows[0]) if rows else 0
    piv = []
    r = 0
    for c in range(ncols):
        i = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for j in range(len(rows)):
            if j != r and rows[j][c] != 0:
                f = rows[j][c]
                rows[j] = [a - f * b for a, b in zip(rows[j], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def kernel_basis_rational(M) -> np.ndarray:
    """Integer basis (primitive vectors) of the rational null space; small matrices only."""
    A = _dense(M)
    ncols = A.shape[1]
    R, piv = rref_rational(A) if A.shape[0] else ([], [])
    out = []
    for f in (c for c in range(ncols) if c not in set(piv)):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(R, piv):
            v[c] = -row[f]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        out.append([x // g for x in ints])
    return np.array(out, dtype=object).reshape(len(out), ncols)


def _stack(vectors) -> np.ndarray:
    arrays = [np.asarray(getattr(v, "entries", v)) for v in vectors]
    lengths = {len(a) for a in arrays}
    if len(lengths) > 1:
        raise LinalgError(f"vectors have mixed lengths {sorted(lengths)}")
    return np.array(arrays, dtype=object if any(a.dtype == object for a in arrays) else np.int64)


def span_dim(vectors, characteristic: int) -> int:
    """Dimension of the span over GF(l) (``characteristic=l``) or Q (``0``)."""
    vectors = list(vectors)
    if not vectors:
        return 0
    A = _stack(vectors)
    if characteristic == 0:
        return bareiss_rank(A)
    _check_prime(characteristic)
    return _rank_mod_dense(A % characteristic, characteristic)
