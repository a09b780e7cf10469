"""Points, directions, lines and dual counts for the linear representation.

Points of the affine space AG(n, q) are stored as bare coordinate tuples
``(a_1, ..., a_n)`` standing for the projective point ``(1:a_1:...:a_n)``.
A point's row index is its coordinate tuple read as a base-q numeral, so
index order and lexicographic order coincide.

Directions (points of the hyperplane at infinity) are tuples normalized so
that the first nonzero coordinate is 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING

import numpy as np

from .gf import Field

if TYPE_CHECKING:
    from .ksets import KSet


@dataclass(frozen=True)
class GeomConfig:
    fld: Field
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"ambient dimension n must be >= 2, got {self.n}")

    @property
    def q(self) -> int:
        return self.fld.q

    @property
    def num_points(self) -> int:
        return self.q**self.n

    @property
    def num_h_points(self) -> int:
        return (self.q**self.n - 1) // (self.q - 1)

    def __repr__(self):
        return f"GeomConfig(q={self.q}, n={self.n})"


@dataclass(frozen=True)
class Line:
    direction: tuple[int, ...]
    base: tuple[int, ...]


def normalize(fld: Field, vec) -> tuple[int, ...]:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    v = np.asarray(vec, dtype=np.int64)
    nz = np.nonzero(v)[0]
    if len(nz) == 0:
        raise ValueError("the zero vector is not a projective point")
    s = fld.inv(int(v[nz[0]]))
    return tuple(int(x) for x in fld.vmul(v, s))


def point_coords(cfg: GeomConfig) -> np.ndarray:
    """All q^n points as a (q^n, n) array in index order."""
    q, n = cfg.q, cfg.n
    idx = np.arange(q**n, dtype=np.int64)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // weights[None, :]) % q


def point_index(cfg: GeomConfig, coords) -> np.ndarray:
    """Row index of one point or of every row of a (m, n) coordinate array."""
    c = np.asarray(coords, dtype=np.int64)
    weights = cfg.q ** np.arange(cfg.n - 1, -1, -1, dtype=np.int64)
    return c @ weights


def enum_affine_points(cfg: GeomConfig) -> list[tuple[int, ...]]:
    return list(product(range(cfg.q), repeat=cfg.n))


def h_point_array(cfg: GeomConfig) -> np.ndarray:
    """Normalized points of PG(n-1, q) as a sorted (count, n) array."""
    pts = point_coords(cfg)[1:]
    first = np.argmax(pts != 0, axis=1)
    lead = pts[np.arange(len(pts)), first]
    return pts[lead == 1]


def enum_h_points(cfg: GeomConfig) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in row) for row in h_point_array(cfg)]


def _translates(cfg: GeomConfig, pts: np.ndarray, direction) -> np.ndarray:
    """(len(pts), q) indices of ``pt + t*direction`` for every t in GF(q)."""
    fld = cfg.fld
    d = np.asarray(direction, dtype=np.int64)
    t = np.arange(cfg.q, dtype=np.int64)
    steps = fld.vmul(t[:, None], d[None, :])          # (q, n)
    moved = fld.vadd(pts[:, None, :], steps[None, :, :])  # (m, q, n)
    return point_index(cfg, moved)


def line_points(cfg: GeomConfig, line: Line) -> list[tuple[int, ...]]:
    base = np.asarray(line.base, dtype=np.int64)[None, :]
    idx = np.sort(_translates(cfg, base, line.direction)[0])
    coords = point_coords(cfg)
    return [tuple(int(x) for x in coords[i]) for i in idx]


def parallel_class(cfg: GeomConfig, direction) -> tuple[np.ndarray, np.ndarray]:
    """Lines with one direction, as (sorted base indices, (q^(n-1), q) point indices).

    Rows of the second array are sorted, so column 0 is the base point.
    """
    members = np.sort(_translates(cfg, point_coords(cfg), direction), axis=1)
    bases, first = np.unique(members[:, 0], return_index=True)
    return bases, members[first]


def enum_lines(cfg: GeomConfig, K: "KSet") -> list[Line]:
    coords = point_coords(cfg)
    out = []
    for u in K.directions:
        bases, _ = parallel_class(cfg, u)
        out.extend(Line(u, tuple(int(x) for x in coords[b])) for b in bases)
    return out


def _k_array(cfg: GeomConfig, K) -> np.ndarray:
    dirs = K.directions if hasattr(K, "directions") else K
    return np.array(dirs, dtype=np.int64).reshape(-1, cfg.n)


def vanishing_mask(cfg: GeomConfig, functionals: np.ndarray, K) -> np.ndarray:
    """Boolean per functional: does it vanish at some direction of K?"""
    Ka = _k_array(cfg, K)
    if len(Ka) == 0:
        return np.zeros(len(functionals), dtype=bool)
    values = cfg.fld.dot(functionals, Ka.T)
    return np.any(values == 0, axis=1)


def count_h_k(cfg: GeomConfig, K) -> int:
    """Number of hyperplanes of PG(n-1, q) meeting K (one normalized functional each)."""
    return int(vanishing_mask(cfg, h_point_array(cfg), K).sum())


def dual_zero_count(cfg: GeomConfig, K) -> int:
    """Number of all q^n functionals, zero included, that vanish at a point of K."""
    return int(vanishing_mask(cfg, point_coords(cfg), K).sum())


def rank_formula(cfg: GeomConfig, K) -> int:
    """``1 + (q-1) h_K`` for nonempty K, 0 for the empty set."""
    if len(_k_array(cfg, K)) == 0:
        return 0
    return 1 + (cfg.q - 1) * count_h_k(cfg, K)
