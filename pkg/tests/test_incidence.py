import numpy as np
import pytest

from conftest import geometry, kset
from fingeo.geometry import enum_lines, line_points, point_index
from fingeo.incidence import (
    IncidenceError, alist_text, build_incidence, export_alist, export_matrixmarket, matrixmarket_text,
    max_column_overlap, parse_alist, parse_matrixmarket, read_alist, read_matrixmarket,
)
from fingeo.ksets import make_kset


def parallel_4x2():
    cfg = geometry(2, 2)
    return build_incidence(cfg, make_kset(cfg, [(1, 0)]))


def test_parallel_class_matrix():
    N = parallel_4x2()
    D = N.to_dense()
    assert D.shape == (4, 2)
    assert D.sum(axis=0).tolist() == [2, 2] and (D[:, 0] @ D[:, 1]) == 0


@pytest.mark.parametrize("q,n,spec,rows,cols,rw", [(2, 3, "full", 8, 28, 7), (5, 2, "random:3:0", 25, 15, 3)])
def test_shapes_and_degrees(q, n, spec, rows, cols, rw):
    cfg, K = kset(q, n, spec)
    D = build_incidence(cfg, K).to_dense()
    assert D.shape == (rows, cols)
    assert set(D.sum(axis=1)) == {rw} and set(D.sum(axis=0)) == {q}


@pytest.mark.parametrize("q,n,spec", [(3, 2, "full"), (4, 3, "hyperoval"), (2, 4, "random:5:3")])
def test_columns_are_lines_in_canonical_order(q, n, spec):
    cfg, K = kset(q, n, spec)
    N = build_incidence(cfg, K)
    lines = enum_lines(cfg, K)
    assert len(lines) == N.n_cols
    for j, L in enumerate(lines):
        assert sorted(N.cols[j].tolist()) == sorted(point_index(cfg, line_points(cfg, L)).tolist())
    for i in range(N.n_rows):
        assert all(i in N.cols[c] for c in N.point_lines[i])


def test_matvec_matches_dense():
    cfg, K = kset(3, 3, "rnc")
    N = build_incidence(cfg, K)
    D = N.to_dense()
    rng = np.random.default_rng(0)
    x, y = rng.integers(-3, 4, N.n_cols), rng.integers(-3, 4, N.n_rows)
    assert np.array_equal(N.matvec(x), D @ x)
    assert np.array_equal(N.rmatvec(y), D.T @ y)
    assert np.array_equal(N.transpose().to_dense(), D.T)


def test_alist_examples():
    N = parallel_4x2()
    lines = alist_text(N, "N").splitlines()
    assert lines[0] == "2 4" and lines[2] == "2 2"
    assert alist_text(N, "N_transpose").splitlines()[0] == "4 2"


@pytest.mark.parametrize("orient", ["N", "NT"])
def test_alist_round_trip(tmp_path, orient):
    cfg, K = kset(4, 3, "hyperoval")
    N = build_incidence(cfg, K)
    path = tmp_path / "n.alist"
    export_alist(N, orient, path)
    assert b"\r" not in path.read_bytes()
    back = read_alist(path)
    expected = N.to_dense() if orient == "N" else N.to_dense().T
    assert np.array_equal(back.to_dense(), expected)


def test_matrixmarket_examples(tmp_path):
    text = matrixmarket_text(parallel_4x2())
    assert text.splitlines()[0] == "%%MatrixMarket matrix coordinate pattern general"
    assert text.splitlines()[1] == "4 2 4"
    cfg = geometry(3, 2)
    empty = build_incidence(cfg, make_kset(cfg, []))
    assert matrixmarket_text(empty).splitlines()[1] == "9 0 0"
    cfg, K = kset(3, 3, "full")
    N = build_incidence(cfg, K)
    for orient in ("N", "NT"):
        path = tmp_path / f"m{orient}.mtx"
        export_matrixmarket(N, path, orient)
        expected = N.to_dense() if orient == "N" else N.to_dense().T
        assert np.array_equal(read_matrixmarket(path).to_dense(), expected)


def test_malformed_inputs():
    with pytest.raises(IncidenceError):
        parse_alist("2 4\n2 2\n")
    with pytest.raises(IncidenceError):
        parse_matrixmarket("%%MatrixMarket matrix array real general\n1 1\n1\n")
    with pytest.raises(IncidenceError):
        alist_text(parallel_4x2(), "sideways")


@pytest.mark.parametrize("q,n", [(3, 2), (4, 2), (2, 3), (3, 3)])
def test_two_points_share_at_most_one_line(q, n):
    cfg, K = kset(q, n, "full")
    N = build_incidence(cfg, K)
    D = N.to_dense()
    gram = D.T @ D
    np.fill_diagonal(gram, 0)
    assert max_column_overlap(N) == gram.max() == 1
    assert max_column_overlap(N.transpose()) == 1


def test_size_guard():
    cfg, K = kset(2, 3, "full")
    with pytest.raises(IncidenceError):
        build_incidence(cfg, K, max_nnz=10)
