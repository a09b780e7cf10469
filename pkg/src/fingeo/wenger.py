"""Wenger graphs: K is the moment curve {(1, u, u^2, ..., u^(n-1))}."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from pathlib import Path

import numpy as np

from . import gf, linalg
from .geometry import GeomConfig
from .incidence import build_incidence
from .ksets import build_kset

ENUM_BUDGET = 10**7


@dataclass(frozen=True)
class WengerReport:
    n: int
    q: int
    char: int
    matrix_rank: int
    formula_rank: int
    rootless_count: int

    @property
    def consistent(self) -> bool:
        return self.matrix_rank == self.formula_rank == self.q**self.n - self.rootless_count

    @property
    def lu3_dim_C(self) -> int | None:
        """Dimension of LU(3, q) (the code C of the n = 3 Wenger geometry)."""
        return self.q**3 - self.matrix_rank if self.n == 3 else None


def rootless_poly_count(n: int, q: int, budget: int = ENUM_BUDGET) -> int:
    """Count coefficient vectors (c_1..c_n) whose polynomial c_1 + c_2 X + ... has no root in GF(q)."""
    if q**n > budget:
        raise ValueError(f"q^n = {q**n} polynomials exceed the enumeration budget {budget}")
    fld = gf.gf(q)
    coeffs = np.array(list(product(range(q), repeat=n)), dtype=np.int64)
    x = np.arange(q)
    # Horner from the top coefficient, all polynomials and all points at once
    val = np.zeros((len(coeffs), q), dtype=np.int64)
    for k in range(n - 1, -1, -1):
        val = fld.vadd(fld.vmul(val, x[None, :]), coeffs[:, k:k + 1])
    return int(np.all(val != 0, axis=1).sum())


def wenger_rank_formula(n: int, q: int) -> int:
    rootless = (q - 1) * sum((-1) ** k * comb(q, k) * q ** (d - k) for d in range(n) for k in range(d + 1))
    return q**n - rootless


def wenger_verify(n: int, q: int, ell: int) -> WengerReport:
    fld = gf.gf(q)
    if ell == fld.p:
        raise ValueError("the rank identity needs a characteristic different from p")
    cfg = GeomConfig(fld, n)
    N = build_incidence(cfg, build_kset(cfg, "rnc"))
    r = linalg.rank_mod(N, ell).rank
    return WengerReport(n, q, ell, r, wenger_rank_formula(n, q), rootless_poly_count(n, q))


def export_edge_list(n: int, q: int, path) -> None:
    """Bipartite graph W_{n-1}(q): vertices ``p<i>`` (points) and ``l<j>`` (lines)."""
    cfg = GeomConfig(gf.gf(q), n)
    N = build_incidence(cfg, build_kset(cfg, "rnc"))
    lines = [f"# Wenger graph W_{n - 1}({q}): {N.n_rows} points, {N.n_cols} lines, {N.nnz} edges"]
    for j, col in enumerate(N.cols):
        lines += [f"p{i} l{j}" for i in col]
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")
