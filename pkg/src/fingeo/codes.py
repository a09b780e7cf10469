"""The codes C (parity-check N) and D (parity-check N^T) and their special words.

An *alphabet* is a characteristic: a prime l for GF(l), or 0 for the
rationals (words are then integer vectors).  Words built here are signed
0/+1/-1 patterns, reduced to residues in ``[0, l)`` for prime alphabets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from . import gf, linalg
from .geometry import GeomConfig, h_point_array, point_coords, point_index
from .incidence import SparseIncidence, build_incidence
from .ksets import KSet, make_kset

DEFAULT_BUDGET = 2 * 10**6


class CodeError(ValueError):
    pass


@dataclass(eq=False)
class Codeword:
    domain: str  # "L" (code C) or "P" (code D)
    char: int
    entries: np.ndarray

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.entries))

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> str:
        return json.dumps({"domain": self.domain, "char": self.char, "entries": [int(x) for x in self.entries]})

    @classmethod
    def from_json(cls, text: str) -> "Codeword":
        data = json.loads(text)
        if data["domain"] not in ("L", "P"):
            raise CodeError(f"unknown domain {data['domain']!r}")
        char = int(data["char"])
        entries = np.array(data["entries"], dtype=np.int64)
        if char and np.any((entries < 0) | (entries >= char)):
            raise CodeError(f"entries must be residues in [0, {char})")
        return cls(data["domain"], char, entries)


def _signed(values: np.ndarray, char: int, domain: str) -> Codeword:
    values = np.asarray(values, dtype=np.int64)
    if char:
        values = values % char
    return Codeword(domain, char, values)


@lru_cache(maxsize=64)
def incidence_for(cfg: GeomConfig, K: KSet) -> SparseIncidence:
    return build_incidence(cfg, K)


def _in_K(K: KSet, u) -> int:
    u = tuple(int(x) for x in u)
    if u not in K:
        raise CodeError(f"direction {u} is not in K")
    return K.index(u)


# ---------------------------------------------------------------------------
# plane words (code C)

@dataclass(frozen=True)
class PlaneWordSpec:
    u1: tuple[int, ...]
    u2: tuple[int, ...]
    plane_rep: tuple[int, ...]


def _span_offsets(cfg: GeomConfig, basis) -> np.ndarray:
    """All GF(q)-combinations of the basis vectors, as a (q^k, n) array."""
    B = np.array(basis, dtype=np.int64).reshape(-1, cfg.n)
    if not len(B):
        return np.zeros((1, cfg.n), dtype=np.int64)
    coeffs = np.array(list(product(range(cfg.q), repeat=len(B))), dtype=np.int64)
    return cfg.fld.dot(coeffs, B)


def coset_min(cfg: GeomConfig, offsets: np.ndarray) -> np.ndarray:
    """For every point, the smallest point index in ``point + span``."""
    pts = point_coords(cfg)
    moved = cfg.fld.vadd(pts[:, None, :], offsets[None, :, :])
    return point_index(cfg, moved).min(axis=1)


def plane_word(cfg: GeomConfig, K: KSet, spec: PlaneWordSpec, alphabet: int) -> Codeword:
    """+1 on the q lines of the plane with direction u1, -1 on those with direction u2."""
    k1, k2 = _in_K(K, spec.u1), _in_K(K, spec.u2)
    if k1 == k2:
        raise CodeError("plane word needs two distinct directions")
    N = incidence_for(cfg, K)
    fld = cfg.fld
    rep = np.asarray(spec.plane_rep, dtype=np.int64)
    t = np.arange(cfg.q)
    on_u2 = fld.vadd(rep[None, :], fld.vmul(t[:, None], np.asarray(spec.u2)[None, :]))
    on_u1 = fld.vadd(rep[None, :], fld.vmul(t[:, None], np.asarray(spec.u1)[None, :]))
    w = np.zeros(N.n_cols, dtype=np.int64)
    w[N.point_lines[point_index(cfg, on_u2), k1]] = 1
    w[N.point_lines[point_index(cfg, on_u1), k2]] = -1
    return _signed(w, alphabet, "L")


def plane_reps(cfg: GeomConfig, u1, u2) -> list[tuple[int, ...]]:
    """Lex-min representatives of the q^(n-2) affine planes through directions u1, u2."""
    reps = np.unique(coset_min(cfg, _span_offsets(cfg, [u1, u2])))
    coords = point_coords(cfg)
    return [tuple(int(x) for x in coords[i]) for i in reps]


def enumerate_plane_words(cfg: GeomConfig, K: KSet, alphabet: int) -> list[Codeword]:
    out = []
    for u1, u2 in combinations(K.directions, 2):
        for rep in plane_reps(cfg, u1, u2):
            out.append(plane_word(cfg, K, PlaneWordSpec(u1, u2, rep), alphabet))
    return out


# ---------------------------------------------------------------------------
# capacitor words (code D)

@dataclass(frozen=True)
class CapacitorSpec:
    theta: tuple[int, ...]
    s1: int
    s2: int
    span_mode: bool = False
    y0: tuple[int, ...] | None = None


def _theta_checks(cfg: GeomConfig, K: KSet, spec: CapacitorSpec) -> np.ndarray:
    theta = np.asarray(spec.theta, dtype=np.int64)
    if theta.shape != (cfg.n,):
        raise CodeError(f"functional must have {cfg.n} coordinates")
    if not theta.any():
        raise CodeError("functional must be nonzero")
    if spec.s1 == spec.s2:
        raise CodeError("capacitor word needs s1 != s2")
    if len(K) and np.any(cfg.fld.dot(K.array(), theta[:, None]) == 0):
        raise CodeError("functional vanishes on a direction of K: its hyperplane at infinity meets K")
    return theta


def capacitor_word(cfg: GeomConfig, K: KSet, spec: CapacitorSpec, alphabet: int) -> Codeword:
    """Indicator of {theta = s1} minus indicator of {theta = s2}."""
    if spec.span_mode:
        return d_capacitor_word(cfg, K, spec, alphabet)
    theta = _theta_checks(cfg, K, spec)
    values = cfg.fld.dot(point_coords(cfg), theta[:, None])[:, 0]
    w = (values == spec.s1).astype(np.int64) - (values == spec.s2).astype(np.int64)
    return _signed(w, alphabet, "P")


def span_basis(cfg: GeomConfig, K: KSet) -> np.ndarray:
    """Row-reduced basis of the linear span of K's direction vectors."""
    if not len(K):
        return np.zeros((0, cfg.n), dtype=np.int64)
    return gf.row_reduce(cfg.fld, [list(u) for u in K.directions])[0]


def d_capacitor_word(cfg: GeomConfig, K: KSet, spec: CapacitorSpec, alphabet: int) -> Codeword:
    """Two parallel affine d-flats inside y0 + span(K), weight 2 q^d."""
    theta = _theta_checks(cfg, K, spec)
    B = span_basis(cfg, K)
    if len(B) == 0:
        raise CodeError("K spans nothing; no d-capacitor word")
    fld = cfg.fld
    W = _span_offsets(cfg, B)
    y0 = np.zeros(cfg.n, np.int64) if spec.y0 is None else np.asarray(spec.y0, dtype=np.int64)
    values = fld.dot(W, theta[:, None])[:, 0]
    pts = fld.vadd(y0[None, :], W)
    w = np.zeros(cfg.num_points, dtype=np.int64)
    w[point_index(cfg, pts[values == spec.s1])] = 1
    w[point_index(cfg, pts[values == spec.s2])] = -1
    return _signed(w, alphabet, "P")


def valid_functionals(cfg: GeomConfig, K: KSet) -> np.ndarray:
    """Normalized functionals (one per hyperplane of H) vanishing nowhere on K."""
    thetas = h_point_array(cfg)
    if not len(K):
        return thetas
    ok = np.all(cfg.fld.dot(thetas, K.array().T) != 0, axis=1)
    return thetas[ok]


def enumerate_capacitor_words(cfg: GeomConfig, K: KSet, alphabet: int) -> list[Codeword]:
    """For each valid normalized theta and s != 0, the word chi{theta=s} - chi{theta=0}.

    Differences of two level sets are sums of these, so the family spans
    the same space as all capacitor words.
    """
    return [
        capacitor_word(cfg, K, CapacitorSpec(tuple(int(x) for x in th), s, 0), alphabet)
        for th in valid_functionals(cfg, K)
        for s in range(1, cfg.q)
    ]


# ---------------------------------------------------------------------------
# explicit small words

KGON_A = [(0, 0), (0, 1), (1, 2), (2, 2), (2, 1), (1, 0)]
KGON_B = [(0, 0), (0, 1), (1, 2), (2, 2), (3, 1), (3, 0), (2, -1), (1, -1)]


def kgon_kset(fld: gf.Field, size: int) -> KSet:
    """K = {<(1,0)>, <(0,1)>, <(1,1)>}, plus <(1,-1)> when ``size == 4``."""
    cfg = GeomConfig(fld, 2)
    dirs = [(1, 0), (0, 1), (1, 1)]
    if size == 4:
        dirs.append((1, fld.from_int(-1)))
    elif size != 3:
        raise CodeError("kgon sets have 3 or 4 directions")
    return make_kset(cfg, dirs, "file")


def kgon_word(fld: gf.Field, size: int) -> Codeword:
    """Alternating-sign word on the hexagon (size 3) or octagon (size 4) in AG(2, q)."""
    pts, min_p = (KGON_A, 3) if size == 3 else (KGON_B, 5)
    if size not in (3, 4):
        raise CodeError("kgon words exist for |K| = 3 or 4")
    if fld.p < min_p:
        raise CodeError(f"characteristic {fld.p} too small; need p >= {min_p}")
    cfg = GeomConfig(fld, 2)
    w = np.zeros(cfg.num_points, dtype=np.int64)
    for i, (a, b) in enumerate(pts, start=1):
        w[point_index(cfg, [fld.from_int(a), fld.from_int(b)])] = (-1) ** i
    return Codeword("P", 0, w)


def kgon_words(fld: gf.Field) -> tuple[Codeword, Codeword]:
    return kgon_word(fld, 3), kgon_word(fld, 4)


def parallel_pair_word(cfg: GeomConfig, K: KSet, v, alphabet: int, line=None) -> Codeword:
    """chi(l1) - chi(l2) for two parallel lines of direction v in an affine plane
    whose line at infinity contains K and v.

    ``line`` is a pair of vectors spanning that line of H; by default it is
    spanned by K and v.  The word lies in D when v is not in K, and over
    characteristic p also when it is.
    """
    fld = cfg.fld
    v = tuple(int(x) for x in v)
    span = [list(u) for u in (line if line is not None else list(K.directions) + [v])]
    B = gf.row_reduce(fld, span)[0]
    if len(B) != 2 or gf.rank(fld, [list(r) for r in B] + [list(u) for u in K.directions] + [list(v)]) != 2:
        raise CodeError("K and v must lie on one line of H")
    other = next(r for r in B if gf.rank(fld, [list(r), list(v)]) == 2)
    t = np.arange(cfg.q)
    l1 = fld.vmul(t[:, None], np.asarray(v)[None, :])
    l2 = fld.vadd(np.asarray(other)[None, :], l1)
    w = np.zeros(cfg.num_points, dtype=np.int64)
    w[point_index(cfg, l1)] = 1
    w[point_index(cfg, l2)] = -1
    return _signed(w, alphabet, "P")


def all_ones_word(cfg: GeomConfig, alphabet: int) -> Codeword:
    return _signed(np.ones(cfg.num_points, dtype=np.int64), alphabet, "P")


# ---------------------------------------------------------------------------
# membership, dimensions, spanning

def syndrome(cfg: GeomConfig, K: KSet, w: Codeword) -> np.ndarray:
    N = incidence_for(cfg, K)
    entries = np.asarray(w.entries).astype(object) if w.char == 0 else np.asarray(w.entries, dtype=np.int64)
    if w.domain == "L":
        if len(entries) != N.n_cols:
            raise CodeError(f"L-word has length {len(entries)}, expected {N.n_cols}")
        s = N.matvec(entries)
    elif w.domain == "P":
        if len(entries) != N.n_rows:
            raise CodeError(f"P-word has length {len(entries)}, expected {N.n_rows}")
        s = N.rmatvec(entries)
    else:
        raise CodeError(f"unknown domain {w.domain!r}")
    return s % w.char if w.char else s


def is_codeword(cfg: GeomConfig, K: KSet, w: Codeword, alphabet: int | None = None) -> bool:
    """``N w == 0`` (L-words) or ``N^T w == 0`` (P-words) over the alphabet."""
    if alphabet is not None and alphabet != w.char:
        w = Codeword(w.domain, alphabet, np.asarray(w.entries, dtype=np.int64) % alphabet if alphabet else w.entries)
    return not np.any(syndrome(cfg, K, w))


def rank_report(cfg: GeomConfig, K: KSet, alphabet: int) -> linalg.RankReport:
    """Rank of N; over Q the capacitor words serve as the kernel certificate."""
    N = incidence_for(cfg, K)
    if alphabet:
        return linalg.rank_mod(N, alphabet)
    caps = [w.entries for w in enumerate_capacitor_words(cfg, K, 0)]
    return linalg.rank_char0(N, left_kernel=caps)


def code_rank(cfg: GeomConfig, K: KSet, alphabet: int) -> int:
    return rank_report(cfg, K, alphabet).rank


def code_dims(cfg: GeomConfig, K: KSet, alphabet: int) -> tuple[int, int]:
    N = incidence_for(cfg, K)
    r = code_rank(cfg, K, alphabet)
    return N.n_cols - r, N.n_rows - r


@dataclass(frozen=True)
class SpanReport:
    span_dim: int
    code_dim: int
    family_size: int

    @property
    def equal(self) -> bool:
        return self.span_dim == self.code_dim


def verify_spanning(cfg: GeomConfig, K: KSet, which: str, alphabet: int) -> SpanReport:
    """Compare the span of plane words (``plane_words_C``) or capacitor words
    (``capacitors_D``) with the dimension of the code they generate."""
    if alphabet == cfg.fld.p:
        raise CodeError("spanning checks need an alphabet in which q is invertible")
    dim_c, dim_d = code_dims(cfg, K, alphabet)
    if which in ("plane_words_C", "C", "plane"):
        family = enumerate_plane_words(cfg, K, alphabet)
        target = dim_c
    elif which in ("capacitors_D", "D", "capacitor"):
        family = enumerate_capacitor_words(cfg, K, alphabet)
        target = dim_d
    else:
        raise CodeError(f"unknown family {which!r}")
    return SpanReport(linalg.span_dim(family, alphabet), target, len(family))


# ---------------------------------------------------------------------------
# minimum weight

@dataclass
class MinWeightReport:
    code: str
    char: int
    dim: int
    exact: bool
    lower: int | None
    upper: int | None
    method: str
    witness: Codeword | None = None

    @property
    def value(self) -> int | None:
        return self.upper if self.exact else None


def lower_bound(cfg: GeomConfig, K: KSet, which: str, alphabet: int) -> int:
    """Weight floor for nonzero codewords: q+1 for C; |K|+1 for D, 2|K| over Q."""
    if which == "C":
        return cfg.q + 1
    return max(len(K) + 1, 2 * len(K) if alphabet == 0 else 0)


def candidate_words(cfg: GeomConfig, K: KSet, which: str, alphabet: int) -> list[Codeword]:
    """Explicitly constructed words that may lie in the code (membership not yet checked)."""
    out: list[Codeword] = []
    if which == "C":
        if len(K) >= 2:
            u1, u2 = K.directions[:2]
            out.append(plane_word(cfg, K, PlaneWordSpec(u1, u2, (0,) * cfg.n), alphabet))
        return out
    thetas = valid_functionals(cfg, K)
    if len(K) and len(thetas):
        spec = CapacitorSpec(tuple(int(x) for x in thetas[0]), 1, 0)
        out.append(d_capacitor_word(cfg, K, spec, alphabet))
    B = span_basis(cfg, K)
    if 1 <= len(B) <= 2:
        H = h_point_array(cfg)
        if len(B) == 1:
            extra = next(h for h in H if gf.rank(cfg.fld, [list(B[0]), list(h)]) == 2)
            B = np.vstack([B, extra])
        for v in H:
            if gf.rank(cfg.fld, [list(B[0]), list(B[1]), list(v)]) == 2:
                out.append(parallel_pair_word(cfg, K, v, alphabet, line=B))
    if cfg.n == 2 and cfg.fld.p >= 3:
        for size in (3, 4):
            try:
                if kgon_kset(cfg.fld, size).directions == K.directions:
                    out.append(_signed(kgon_word(cfg.fld, size).entries, alphabet, "P"))
            except CodeError:
                pass
    out.append(all_ones_word(cfg, alphabet))
    return out


def _check_matrix(cfg: GeomConfig, K: KSet, which: str) -> np.ndarray:
    N = incidence_for(cfg, K).to_dense()
    if which == "C":
        return N
    if which == "D":
        return N.T.copy()
    raise CodeError(f"code must be C or D, got {which!r}")


def _enumerate_min(basis: np.ndarray, ell: int, chunk: int = 4096) -> tuple[int, np.ndarray]:
    """Minimum weight over the nonzero span of ``basis`` (projective representatives)."""
    k = len(basis)
    best, best_vec = None, None
    for lead in range(k):
        # coefficient vectors whose first nonzero slot is `lead` and equals 1
        free = k - lead - 1
        total = ell**free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            tail = (idx[:, None] // (ell ** np.arange(free - 1, -1, -1, dtype=np.int64))[None, :]) % ell if free else np.zeros((len(idx), 0), np.int64)
            coef = np.zeros((len(idx), k), dtype=np.int64)
            coef[:, lead] = 1
            coef[:, lead + 1:] = tail
            words = linalg.mulmod(coef, basis, ell)
            wts = np.count_nonzero(words, axis=1)
            i = int(np.argmin(wts))
            if best is None or wts[i] < best:
                best, best_vec = int(wts[i]), words[i]
    return best, best_vec


def _small_integer_min(basis: np.ndarray, radius: int = 2) -> tuple[int | None, np.ndarray | None]:
    k = len(basis)
    grid = np.array(np.meshgrid(*[np.arange(-radius, radius + 1)] * k, indexing="ij")).reshape(k, -1).T
    grid = grid[np.any(grid != 0, axis=1)]
    words = grid.astype(object) @ basis.astype(object)
    wts = (words != 0).sum(axis=1).astype(np.int64)
    i = int(np.argmin(wts))
    return int(wts[i]), words[i]


def _cols_rank(H: np.ndarray, cols: list[int], alphabet: int) -> int:
    sub = H[:, cols]
    sub = sub[np.any(sub != 0, axis=1)]
    if alphabet == 0:
        return linalg.bareiss_rank(sub)
    return len(linalg.rref_mod(sub, alphabet)[1])


def _dependency_weight(H: np.ndarray, cols: list[int], alphabet: int) -> int:
    sub = H[:, cols]
    sub = sub[np.any(sub != 0, axis=1)]
    if alphabet == 0:
        ker = linalg.kernel_basis_rational(sub)
    else:
        ker = linalg.kernel_basis_mod(sub, alphabet)
    return min(int(np.count_nonzero(v)) for v in ker)


def support_search(H: np.ndarray, starts: list[int], alphabet: int, max_weight: int, node_budget: int):
    """Smallest codeword weight <= max_weight for the parity-check matrix H, by
    growing supports from the given start positions.

    Every codeword is assumed to contain a translate of some start position,
    so ``starts`` must meet every orbit of positions under the code's
    automorphisms used.  Returns ``(weight or None, completed)``.
    """
    checks_of = [np.flatnonzero(H[:, j]) for j in range(H.shape[1])]
    positions_of = [np.flatnonzero(H[i]) for i in range(H.shape[0])]
    bound = max_weight
    best = None
    seen: set[frozenset] = set()
    nodes = 0

    def touched_once(S):
        counts: dict[int, int] = {}
        for j in S:
            for c in checks_of[j]:
                counts[c] = counts.get(c, 0) + 1
        return sorted(c for c, m in counts.items() if m == 1)

    stack = [[s] for s in starts]
    while stack:
        S = stack.pop()
        key = frozenset(S)
        if key in seen:
            continue
        seen.add(key)
        nodes += 1
        if nodes > node_budget:
            return best, False
        if _cols_rank(H, S, alphabet) < len(S):
            w = _dependency_weight(H, S, alphabet)
            if best is None or w < best:
                best = w
                bound = min(bound, w - 1)
            continue
        if len(S) >= bound:
            continue
        open_checks = touched_once(S)
        if open_checks:
            options = [int(j) for j in positions_of[open_checks[0]] if j not in key]
        else:
            options = [j for j in range(H.shape[1]) if j not in key]
        for j in reversed(options):
            stack.append(S + [j])
    return best, True


def min_weight(cfg: GeomConfig, K: KSet, which: str, alphabet: int, budget: int | None = None) -> MinWeightReport:
    """Exact minimum weight where affordable, certified bounds otherwise.

    Routes, in order: full enumeration of the code when ``l**dim <= budget``
    (prime alphabets); bounds meeting (explicit word weight equals the
    floor); a support-growing search below the best known word, with a
    node budget of ``budget // 200``.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    H = _check_matrix(cfg, K, which)
    length = H.shape[1]
    r = code_rank(cfg, K, alphabet)
    dim = length - r
    lower = lower_bound(cfg, K, which, alphabet)
    if dim == 0:
        return MinWeightReport(which, alphabet, 0, True, None, None, "zero-code")

    upper, witness = None, None
    for w in candidate_words(cfg, K, which, alphabet):
        if w.weight and is_codeword(cfg, K, w) and (upper is None or w.weight < upper):
            upper, witness = w.weight, w

    domain = "L" if which == "C" else "P"
    if alphabet and alphabet**dim <= budget:
        basis = linalg.kernel_basis_mod(H, alphabet)
        best, vec = _enumerate_min(basis, alphabet)
        return MinWeightReport(which, alphabet, dim, True, best, best, "enumeration", Codeword(domain, alphabet, vec))
    if alphabet == 0 and dim <= 4 and length <= 512:
        best, vec = _small_integer_min(linalg.kernel_basis_rational(H))
        if best and (upper is None or best < upper):
            upper, witness = best, Codeword(domain, 0, np.array(vec, dtype=object))

    if upper is not None and upper <= lower:
        return MinWeightReport(which, alphabet, dim, True, upper, upper, "bounds-meet", witness)

    if which == "D":
        starts = [0]
    else:
        starts = sorted({int(j) for j in incidence_for(cfg, K).point_lines[0]})
    limit = (upper - 1) if upper is not None else length
    found, done = support_search(H, starts, alphabet, limit, max(1, budget // 200))
    if done:
        if found is not None:
            return MinWeightReport(which, alphabet, dim, True, found, found, "support-search")
        if upper is not None:
            return MinWeightReport(which, alphabet, dim, True, upper, upper, "support-search", witness)
    best_upper = min(x for x in (upper, found) if x is not None) if (upper or found) else None
    return MinWeightReport(which, alphabet, dim, False, lower, best_upper, "bounds")
