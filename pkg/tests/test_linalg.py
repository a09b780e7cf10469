from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import geometry, kset
from fingeo import codes
from fingeo.incidence import build_incidence
from fingeo.ksets import make_kset
from fingeo.linalg import (
    LinalgError, bareiss_rank, kernel_basis_mod, kernel_basis_rational, mulmod, rank_char0, rank_mod,
    rref_mod, span_dim,
)


def span_count(A, ell):
    """Brute force: |row space| = ell ** rank."""
    rows = {tuple([0] * A.shape[1])}
    for r in A:
        rows = {tuple((np.array(v) + c * r) % ell) for v in rows for c in range(ell)}
    return len(rows)


def fraction_rank(A):
    M = [[Fraction(int(x)) for x in row] for row in A]
    r = 0
    for c in range(len(M[0]) if M else 0):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


small = arrays(np.int64, st.tuples(st.integers(1, 5), st.integers(1, 5)), elements=st.integers(-4, 4))


@settings(max_examples=60, deadline=None)
@given(small, st.sampled_from([2, 3, 5]))
def test_rank_mod_matches_span_count(A, ell):
    assert ell ** rank_mod(A, ell).rank == span_count(A % ell, ell)


@settings(max_examples=60, deadline=None)
@given(small)
def test_bareiss_matches_fractions(A):
    assert bareiss_rank(A) == fraction_rank(A)


def test_bareiss_large_entries_switch_to_python_ints():
    A = np.array([[2**40, 1, 3], [5, 2**41, 7], [2**40 + 5, 2**41 + 1, 10]], dtype=object)
    assert bareiss_rank(A) == fraction_rank(A) == 2


def test_mulmod_exact():
    rng = np.random.default_rng(1)
    A, B = rng.integers(0, 65521, (40, 300)), rng.integers(0, 65521, (300, 30))
    expected = (A.astype(object).dot(B.astype(object))) % 65521
    assert np.array_equal(mulmod(A, B, 65521), expected.astype(np.int64))


def test_rref_mod_shape():
    A = np.array([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    E, piv = rref_mod(A, 7)
    assert piv == [0, 1]
    assert np.array_equal(E[:, piv], np.eye(2, dtype=np.int64))


def test_rank_examples():
    cfg = geometry(3, 2)
    N = build_incidence(cfg, make_kset(cfg, [(1, 0)]))
    assert rank_mod(N, 2).rank == 3
    cfg, K = kset(4, 3, "hyperoval")
    assert rank_mod(build_incidence(cfg, K), 3).rank == 46
    cfg, K = kset(2, 3, "full")
    assert rank_mod(build_incidence(cfg, K), 3).rank == 8


def test_rank_char0_examples():
    cfg = geometry(2, 2)
    assert rank_char0(build_incidence(cfg, make_kset(cfg, [(1, 0)]))).rank == 2
    cfg, K = kset(2, 3, "rnc")
    rep = rank_char0(build_incidence(cfg, K))
    assert rep.rank == 6 and rep.certified
    assert rank_char0(build_incidence(cfg, make_kset(cfg, []))).rank == 0


@pytest.mark.parametrize("q,n,spec", [(3, 3, "rnc"), (4, 3, "hyperoval"), (5, 2, "random:3:2")])
def test_kernel_certificate_agrees_with_bareiss(q, n, spec):
    cfg, K = kset(q, n, spec)
    N = build_incidence(cfg, K)
    caps = [w.entries for w in codes.enumerate_capacitor_words(cfg, K, 0)]
    cert = rank_char0(N, left_kernel=caps)
    assert cert.method == "kernel-certificate" and cert.certified
    assert cert.rank == bareiss_rank(N.to_dense())


def test_kernel_certificate_rejects_non_kernel_vectors():
    cfg, K = kset(3, 2, "random:2:0")
    N = build_incidence(cfg, K)
    bogus = np.zeros(9, dtype=np.int64)
    bogus[0] = 1
    with pytest.raises(LinalgError):
        rank_char0(N, left_kernel=[bogus])


def test_multiprime_fallback_is_uncertified():
    rng = np.random.default_rng(3)
    A = rng.integers(0, 2, (20, 30))
    rep = rank_char0(A, bareiss_cutoff=5)
    assert rep.method == "multiprime" and not rep.certified
    assert rep.rank == fraction_rank(A)


def test_kernel_examples():
    assert len(kernel_basis_mod(np.eye(4, dtype=np.int64), 5)) == 0
    cfg, K = kset(2, 3, "rnc")
    N = build_incidence(cfg, K).to_dense()
    ker = kernel_basis_mod(N, 3)
    assert len(ker) == 2 and not np.any((N @ ker.T) % 3)
    cfg, K = kset(4, 3, "hyperoval")
    NT = build_incidence(cfg, K).to_dense().T
    assert len(kernel_basis_mod(NT, 3)) == 18


@settings(max_examples=40, deadline=None)
@given(small)
def test_rational_kernel_is_integral_and_annihilating(A):
    ker = kernel_basis_rational(A)
    assert len(ker) == A.shape[1] - fraction_rank(A)
    if len(ker):
        assert not np.any(A.astype(object).dot(ker.T) != 0)


def test_span_dim_examples():
    assert span_dim([], 3) == 0
    v = np.array([1, 2, 0, 1])
    assert span_dim([v, 2 * v], 3) == 1
    with pytest.raises(LinalgError):
        span_dim([np.zeros(3), np.zeros(4)], 3)
    with pytest.raises(LinalgError):
        rank_mod(np.eye(2), 4)
