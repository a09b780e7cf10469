"""Point-line incidence matrix of the linear representation and its file formats."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .geometry import GeomConfig, parallel_class

MAX_NNZ = 10**7


class IncidenceError(ValueError):
    pass


@dataclass(eq=False)
class SparseIncidence:
    """0/1 matrix stored column-wise.

    ``cols[j]`` holds the sorted row indices of column j; every column has
    the same number of entries.  For matrices built from a geometry, rows
    are points, columns are lines, ``line_dir[j]`` is the K-position of
    line j's direction and ``point_lines[i, k]`` is the column of the line
    through point i with direction ``K.directions[k]``.
    """

    n_rows: int
    cols: np.ndarray
    cfg: GeomConfig | None = None
    K: object = None
    line_dir: np.ndarray | None = None
    point_lines: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def nnz(self) -> int:
        return int(self.cols.size)

    @cached_property
    def rows(self) -> list[np.ndarray]:
        """Sorted column indices of each row."""
        flat = self.cols.ravel()
        owner = np.repeat(np.arange(self.n_cols), self.cols.shape[1])
        order = np.lexsort((owner, flat))
        counts = np.bincount(flat, minlength=self.n_rows)
        return np.split(owner[order], np.cumsum(counts)[:-1])

    def to_dense(self, dtype=np.int64) -> np.ndarray:
        A = np.zeros(self.shape, dtype=dtype)
        if self.n_cols:
            A[self.cols, np.arange(self.n_cols)[:, None]] = 1
        return A

    def matvec(self, x) -> np.ndarray:
        """``N @ x`` with exact integer (object-safe) arithmetic."""
        x = np.asarray(x)
        if len(x) != self.n_cols:
            raise IncidenceError(f"vector length {len(x)} != {self.n_cols} columns")
        out = np.zeros(self.n_rows, dtype=x.dtype if x.dtype != bool else np.int64)
        if self.n_cols:
            np.add.at(out, self.cols.ravel(), np.repeat(x, self.cols.shape[1]))
        return out

    def rmatvec(self, y) -> np.ndarray:
        """``N.T @ y``."""
        y = np.asarray(y)
        if len(y) != self.n_rows:
            raise IncidenceError(f"vector length {len(y)} != {self.n_rows} rows")
        if not self.n_cols:
            return np.zeros(0, dtype=y.dtype)
        return y[self.cols].sum(axis=1)

    def transpose(self) -> "SparseIncidence":
        rows = self.rows
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise IncidenceError("transpose needs constant row weight")
        width = widths.pop() if widths else 0
        cols = np.array(rows, dtype=np.int64).reshape(self.n_rows, width)
        return SparseIncidence(self.n_cols, cols)

    def same_pattern(self, other: "SparseIncidence") -> bool:
        return self.shape == other.shape and np.array_equal(self.cols, other.cols)


def build_incidence(cfg: GeomConfig, K, max_nnz: int = MAX_NNZ) -> SparseIncidence:
    """Incidence matrix with rows in point order and columns in line order."""
    q, n = cfg.q, cfg.n
    nnz = q**n * len(K)
    if nnz > max_nnz:
        raise IncidenceError(f"incidence matrix would have {nnz} nonzeros (limit {max_nnz})")
    per_dir = q ** (n - 1)
    cols = np.zeros((per_dir * len(K), q), dtype=np.int64)
    point_lines = np.zeros((q**n, len(K)), dtype=np.int64)
    for k, u in enumerate(K.directions):
        _, members = parallel_class(cfg, u)
        block = slice(k * per_dir, (k + 1) * per_dir)
        cols[block] = members
        point_lines[members.ravel(), k] = np.repeat(np.arange(k * per_dir, (k + 1) * per_dir), q)
    line_dir = np.repeat(np.arange(len(K)), per_dir)
    return SparseIncidence(q**n, cols, cfg, K, line_dir, point_lines)


# ---------------------------------------------------------------------------
# alist (MacKay) and MatrixMarket

def _oriented(M: SparseIncidence, orientation: str) -> SparseIncidence:
    if orientation == "N":
        return M
    if orientation in ("NT", "N_transpose"):
        return M.transpose()
    raise IncidenceError(f"orientation must be N or NT, got {orientation!r}")


def _fmt(values) -> str:
    return " ".join(str(int(v)) for v in values)


def alist_text(M: SparseIncidence, orientation: str = "N") -> str:
    H = _oriented(M, orientation)
    col_deg = [len(c) for c in H.cols]
    row_deg = [len(r) for r in H.rows]
    lines = [
        f"{H.n_cols} {H.n_rows}",
        f"{max(col_deg, default=0)} {max(row_deg, default=0)}",
        _fmt(col_deg),
        _fmt(row_deg),
    ]
    lines += [_fmt(c + 1) for c in H.cols]
    lines += [_fmt(r + 1) for r in H.rows]
    return "\n".join(lines) + "\n"


def export_alist(M: SparseIncidence, orientation: str, path) -> None:
    Path(path).write_text(alist_text(M, orientation), newline="\n")


def parse_alist(text: str) -> SparseIncidence:
    """Parse an alist file into the parity-check matrix it describes."""
    lines = text.split("\n")
    try:
        n_cols, n_rows = (int(x) for x in lines[0].split())
        col_lists = [[int(x) - 1 for x in lines[4 + j].split() if int(x) > 0] for j in range(n_cols)]
        row_lists = [[int(x) - 1 for x in lines[4 + n_cols + i].split() if int(x) > 0] for i in range(n_rows)]
    except (ValueError, IndexError) as exc:
        raise IncidenceError(f"malformed alist: {exc}") from exc
    widths = {len(c) for c in col_lists}
    if len(widths) > 1:
        raise IncidenceError("alist matrix is not column-regular")
    width = widths.pop() if widths else 0
    cols = np.array([sorted(c) for c in col_lists], dtype=np.int64).reshape(n_cols, width)
    M = SparseIncidence(n_rows, cols)
    if [list(r) for r in M.rows] != [sorted(r) for r in row_lists]:
        raise IncidenceError("alist row and column lists disagree")
    return M


def read_alist(path) -> SparseIncidence:
    return parse_alist(Path(path).read_text())


def matrixmarket_text(M: SparseIncidence, orientation: str = "N") -> str:
    H = _oriented(M, orientation)
    lines = ["%%MatrixMarket matrix coordinate pattern general", f"{H.n_rows} {H.n_cols} {H.nnz}"]
    for j, c in enumerate(H.cols):
        lines += [f"{i + 1} {j + 1}" for i in c]
    return "\n".join(lines) + "\n"


def export_matrixmarket(M: SparseIncidence, path, orientation: str = "N") -> None:
    Path(path).write_text(matrixmarket_text(M, orientation), newline="\n")


def parse_matrixmarket(text: str) -> SparseIncidence:
    lines = [ln for ln in text.split("\n") if ln and not ln.startswith("%")]
    try:
        n_rows, n_cols, nnz = (int(x) for x in lines[0].split())
        entries = [tuple(int(x) - 1 for x in ln.split()) for ln in lines[1:1 + nnz]]
    except (ValueError, IndexError) as exc:
        raise IncidenceError(f"malformed MatrixMarket file: {exc}") from exc
    col_lists = [[] for _ in range(n_cols)]
    for i, j in entries:
        col_lists[j].append(i)
    widths = {len(c) for c in col_lists}
    if len(widths) > 1:
        raise IncidenceError("MatrixMarket matrix is not column-regular")
    width = widths.pop() if widths else 0
    return SparseIncidence(n_rows, np.array([sorted(c) for c in col_lists], dtype=np.int64).reshape(n_cols, width))


def read_matrixmarket(path) -> SparseIncidence:
    return parse_matrixmarket(Path(path).read_text())


def max_column_overlap(M: SparseIncidence) -> int:
    """Largest number of rows shared by two distinct columns."""
    if M.n_cols < 2:
        return 0
    A = M.to_dense(np.int32)
    G = A.T @ A
    np.fill_diagonal(G, 0)
    return int(G.max())
