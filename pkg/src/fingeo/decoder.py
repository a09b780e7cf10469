"""One-step majority-logic decoding of the binary codes C and D."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .codes import incidence_for
from .geometry import GeomConfig
from .incidence import max_column_overlap
from .ksets import KSet

EXHAUSTIVE_LIMIT = 10**5
SAMPLES = 10**4
CSV_FIELDS = ["code", "n", "q", "k_size", "t", "trials", "successes"]


class DecodeError(ValueError):
    pass


def guaranteed_radius(cfg: GeomConfig, K: KSet, code: str) -> int:
    """floor(q/2) for C (q checks per line), floor(|K|/2) for D (|K| checks per point)."""
    return cfg.q // 2 if code == "C" else len(K) // 2


def checks_are_orthogonal(cfg: GeomConfig, K: KSet) -> bool:
    """Two lines share at most one point and two points lie on at most one common line."""
    N = incidence_for(cfg, K)
    return max_column_overlap(N) <= 1 and max_column_overlap(N.transpose()) <= 1


def osml_decode(cfg: GeomConfig, K: KSet, code: str, received) -> np.ndarray:
    N = incidence_for(cfg, K)
    r = np.asarray(received, dtype=np.int64) % 2
    if code == "D":
        if len(r) != N.n_rows:
            raise DecodeError(f"D-words have length {N.n_rows}, got {len(r)}")
        syn = r[N.cols].sum(axis=1) % 2          # one parity per line
        votes = syn[N.point_lines].sum(axis=1)   # lines through each point
        flip = 2 * votes > len(K)
    elif code == "C":
        if len(r) != N.n_cols:
            raise DecodeError(f"C-words have length {N.n_cols}, got {len(r)}")
        syn = N.matvec(r) % 2                    # one parity per point
        votes = syn[N.cols].sum(axis=1)          # points on each line
        flip = 2 * votes > cfg.q
    else:
        raise DecodeError(f"code must be C or D, got {code!r}")
    return r ^ flip.astype(np.int64)


@dataclass(frozen=True)
class DecodeTrial:
    code: str
    error_positions: frozenset
    corrected: bool
    flips_made: int


def decode_trial(cfg: GeomConfig, K: KSet, code: str, positions, sent=None) -> DecodeTrial:
    N = incidence_for(cfg, K)
    length = N.n_rows if code == "D" else N.n_cols
    sent = np.zeros(length, dtype=np.int64) if sent is None else np.asarray(sent, dtype=np.int64)
    received = sent.copy()
    received[list(positions)] ^= 1
    out = osml_decode(cfg, K, code, received)
    return DecodeTrial(code, frozenset(int(i) for i in positions), bool(np.array_equal(out, sent)),
                       int(np.count_nonzero(out != received)))


@dataclass(frozen=True)
class TrialSummary:
    code: str
    n: int
    q: int
    k_size: int
    t: int
    trials: int
    successes: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def row(self) -> list:
        return [getattr(self, f) for f in CSV_FIELDS]


def _code_length(cfg: GeomConfig, K: KSet, code: str) -> int:
    if code not in ("C", "D"):
        raise DecodeError(f"code must be C or D, got {code!r}")
    return cfg.num_points if code == "D" else cfg.q ** (cfg.n - 1) * len(K)


def channel_trials(cfg: GeomConfig, K: KSet, code: str, t: int, trials: int, seed: int) -> TrialSummary:
    """Flip ``t`` random positions of the zero word ``trials`` times and decode."""
    length = _code_length(cfg, K, code)
    if not 0 <= t <= length:
        raise DecodeError(f"cannot place {t} errors in a word of length {length}")
    rng = np.random.default_rng(seed)
    ok = 0
    for _ in range(trials):
        ok += decode_trial(cfg, K, code, rng.choice(length, size=t, replace=False)).corrected
    return TrialSummary(code, cfg.n, cfg.q, len(K), t, trials, ok)


def exhaustive_check(cfg: GeomConfig, K: KSet, code: str, t: int, seed: int = 0) -> TrialSummary:
    """Every error pattern of weight exactly ``t`` when there are at most
    ``EXHAUSTIVE_LIMIT`` of them, else ``SAMPLES`` seeded random patterns."""
    length = _code_length(cfg, K, code)
    if comb(length, t) > EXHAUSTIVE_LIMIT:
        return channel_trials(cfg, K, code, t, SAMPLES, seed)
    ok = total = 0
    for pos in combinations(range(length), t):
        ok += decode_trial(cfg, K, code, pos).corrected
        total += 1
    return TrialSummary(code, cfg.n, cfg.q, len(K), t, total, ok)


def write_csv(summaries, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for s in summaries:
        w.writerow(s.row())
