"""Direction sets K in the hyperplane at infinity.

K-sets are built from a short spec string::

    full                  every point of H
    line                  the line of H spanned by e_1, e_2 (alias line:full)
    line:<pts>            the given points, which must be collinear
    line:minus:<pts>      the line spanned by e_1, e_2 with the given points removed
    hyperoval             conic {(1,t,t^2)} + (0,0,1) + nucleus (0,1,0); n=3, q even
    rnc                   {(1,u,...,u^(n-1)) : u in GF(q)}
    random:<m>:<seed>     m distinct points drawn with a splitmix64 stream
    file:<path>           JSON file, see ``load_kset``

``<pts>`` is a ``;``-separated list of comma-separated field indices,
e.g. ``1,0,0;0,1,2``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import gf
from .geometry import GeomConfig, h_point_array, normalize

MASK64 = (1 << 64) - 1


class KSetError(ValueError):
    pass


@dataclass(frozen=True)
class KSet:
    cfg: GeomConfig
    directions: tuple[tuple[int, ...], ...]
    tag: str = "file"

    def __len__(self):
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)

    def __contains__(self, u):
        return tuple(u) in self.directions

    def index(self, u) -> int:
        return self.directions.index(tuple(u))

    def array(self) -> np.ndarray:
        return np.array(self.directions, dtype=np.int64).reshape(-1, self.cfg.n)

    def without(self, u) -> "KSet":
        u = tuple(u)
        if u not in self.directions:
            raise KSetError(f"{u} is not in K")
        return KSet(self.cfg, tuple(d for d in self.directions if d != u), self.tag)


def make_kset(cfg: GeomConfig, vectors, tag: str = "file") -> KSet:
    """Normalize, deduplicate and sort direction vectors."""
    dirs = set()
    for v in vectors:
        v = tuple(int(x) for x in v)
        if len(v) != cfg.n:
            raise KSetError(f"direction {v} has length {len(v)}, expected {cfg.n}")
        if any(not 0 <= x < cfg.q for x in v):
            raise KSetError(f"direction {v} has entries outside GF({cfg.q})")
        if not any(v):
            raise KSetError("the all-zero vector is not a direction")
        dirs.add(normalize(cfg.fld, v))
    return KSet(cfg, tuple(sorted(dirs)), tag)


class SplitMix64:
    """The splitmix64 generator; identical output on every platform."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound


def random_kset(cfg: GeomConfig, m: int, seed: int) -> KSet:
    H = h_point_array(cfg)
    if not 0 <= m <= len(H):
        raise KSetError(f"cannot draw {m} directions from {len(H)} points of H")
    rng = SplitMix64(seed)
    order = list(range(len(H)))
    for i in range(m):
        j = i + rng.below(len(H) - i)
        order[i], order[j] = order[j], order[i]
    return make_kset(cfg, H[order[:m]], "random")


def _std_line(cfg: GeomConfig) -> list[tuple[int, ...]]:
    pad = (0,) * (cfg.n - 2)
    return [(0, 1) + pad] + [(1, t) + pad for t in range(cfg.q)]


def _parse_points(cfg: GeomConfig, text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise KSetError(f"cannot parse point list {text!r}") from None


def is_collinear(cfg: GeomConfig, directions) -> bool:
    if len(directions) <= 2:
        return True
    return gf.rank(cfg.fld, [list(d) for d in directions]) <= 2


def hyperoval_points(cfg: GeomConfig) -> list[tuple[int, ...]]:
    if cfg.n != 3 or cfg.fld.p != 2:
        raise KSetError("the regular hyperoval needs n = 3 and q even")
    fld = cfg.fld
    pts = [(1, t, fld.mul(t, t)) for t in range(cfg.q)]
    return pts + [(0, 0, 1), (0, 1, 0)]


def rnc_points(cfg: GeomConfig) -> list[tuple[int, ...]]:
    fld = cfg.fld
    return [tuple(fld.pow(u, k) if k else 1 for k in range(cfg.n)) for u in range(cfg.q)]


def build_kset(cfg: GeomConfig, spec: str) -> KSet:
    """Construct a K-set from a spec string (see module docstring)."""
    kind, _, rest = spec.strip().partition(":")
    if kind == "full":
        return make_kset(cfg, h_point_array(cfg), "full")
    if kind == "line":
        line = _std_line(cfg)
        if rest in ("", "full"):
            return make_kset(cfg, line, "line")
        if rest.startswith("minus:"):
            drop = {normalize(cfg.fld, v) for v in _parse_points(cfg, rest[len("minus:"):])}
            missing = drop - set(line)
            if missing:
                raise KSetError(f"points {sorted(missing)} are not on the standard line")
            return make_kset(cfg, [u for u in line if u not in drop], "line")
        K = make_kset(cfg, _parse_points(cfg, rest), "line")
        if not is_collinear(cfg, K.directions):
            raise KSetError("line: points are not collinear in H")
        return K
    if kind == "hyperoval":
        return make_kset(cfg, hyperoval_points(cfg), "hyperoval")
    if kind == "rnc":
        return make_kset(cfg, rnc_points(cfg), "rnc")
    if kind == "random":
        try:
            m, seed = (int(x) for x in rest.split(":"))
        except ValueError:
            raise KSetError(f"random spec must be random:<m>:<seed>, got {spec!r}") from None
        return random_kset(cfg, m, seed)
    if kind == "file":
        K = load_kset(rest)
        if (K.cfg.fld.p, K.cfg.fld.e, K.cfg.n) != (cfg.fld.p, cfg.fld.e, cfg.n):
            raise KSetError(f"{rest}: file geometry does not match q={cfg.q}, n={cfg.n}")
        return K
    raise KSetError(f"unknown K-set spec {spec!r}")


def load_kset(path) -> KSet:
    """Read ``{"p":2,"e":2,"n":3,"directions":[[1,0,0],...]}``."""
    try:
        data = json.loads(Path(path).read_text())
        p, e, n = int(data["p"]), int(data["e"]), int(data["n"])
        vectors = data["directions"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise KSetError(f"{path}: invalid K-set file ({exc})") from exc
    try:
        cfg = GeomConfig(gf.field_create(p, e), n)
    except ValueError as exc:
        raise KSetError(f"{path}: {exc}") from exc
    return make_kset(cfg, vectors, "file")


def save_kset(K: KSet, path) -> None:
    data = {"p": K.cfg.fld.p, "e": K.cfg.fld.e, "n": K.cfg.n, "directions": [list(d) for d in K.directions]}
    Path(path).write_text(json.dumps(data) + "\n")


def is_hyperoval(K: KSet) -> bool:
    cfg = K.cfg
    if cfg.n != 3:
        raise KSetError("hyperovals live in a projective plane; need n = 3")
    if len(K) != cfg.q + 2:
        return False
    values = cfg.fld.dot(h_point_array(cfg), K.array().T)
    meets = (values == 0).sum(axis=1)
    return bool(np.all((meets == 0) | (meets == 2)))
