from itertools import product

import numpy as np
import pytest

from conftest import geometry, kset
from fingeo import codes
from fingeo.codes import (
    CapacitorSpec, CodeError, Codeword, PlaneWordSpec, all_ones_word, capacitor_word, code_dims,
    d_capacitor_word, enumerate_capacitor_words, enumerate_plane_words, is_codeword, kgon_kset, kgon_word,
    kgon_words, min_weight, parallel_pair_word, plane_word, verify_spanning,
)
from fingeo.gf import field_create
from fingeo.incidence import build_incidence
from fingeo.ksets import make_kset


def brute_min_weight(H, ell):
    """Smallest nonzero weight among all vectors annihilated by H over GF(ell)."""
    best = None
    for v in product(range(ell), repeat=H.shape[1]):
        v = np.array(v)
        if v.any() and not np.any((H @ v) % ell):
            w = int(np.count_nonzero(v))
            best = w if best is None else min(best, w)
    return best


def test_plane_word_example():
    cfg, K = kset(2, 3, "full")
    w = plane_word(cfg, K, PlaneWordSpec(K.directions[0], K.directions[1], (0, 0, 0)), 3)
    assert w.weight == 4 and is_codeword(cfg, K, w)


def test_plane_word_counts():
    cfg, K = kset(2, 3, "full")
    assert len(codes.plane_reps(cfg, (1, 0, 0), (0, 1, 0))) == 2
    cfg = geometry(2, 3)
    assert len(enumerate_plane_words(cfg, make_kset(cfg, [(1, 0, 0)]), 3)) == 0
    K3 = make_kset(cfg, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(enumerate_plane_words(cfg, K3, 3)) == 6
    assert len(enumerate_plane_words(*kset(5, 2, "random:3:0"), 2)) == 3


@pytest.mark.parametrize("q,n,spec", [(3, 3, "rnc"), (4, 3, "hyperoval"), (2, 4, "random:6:1"), (5, 2, "full")])
def test_plane_words_over_integers(q, n, spec):
    cfg, K = kset(q, n, spec)
    N = build_incidence(cfg, K).to_dense()
    for w in enumerate_plane_words(cfg, K, 0):
        assert w.weight == 2 * q and not np.any(N @ w.entries)
        assert set(np.unique(w.entries)) == {-1, 0, 1}


def test_capacitor_examples():
    cfg = geometry(2, 2)
    K = make_kset(cfg, [(1, 1)])
    w = capacitor_word(cfg, K, CapacitorSpec((1, 0), 0, 1), 0)
    assert w.weight == 4 and is_codeword(cfg, K, w)
    N = build_incidence(cfg, K).to_dense()
    assert all(np.count_nonzero(N[:, j] * w.entries) == 2 for j in range(N.shape[1]))
    cfg, K = kset(2, 3, "full")
    with pytest.raises(CodeError):
        capacitor_word(cfg, K, CapacitorSpec((1, 0, 0), 0, 1), 3)
    cfg, K = kset(3, 3, "rnc")
    words = enumerate_capacitor_words(cfg, K, 0)
    assert words and all(w.weight == 18 for w in words)


def test_d_capacitor_examples():
    cfg = geometry(3, 3)
    K = make_kset(cfg, [(1, 0, 0), (0, 1, 0)])
    th = tuple(int(x) for x in codes.valid_functionals(cfg, K)[0])
    w = d_capacitor_word(cfg, K, CapacitorSpec(th, 1, 0, True), 0)
    assert w.weight == 6 and is_codeword(cfg, K, w)
    cfg = geometry(2, 4)
    K = make_kset(cfg, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    th = tuple(int(x) for x in codes.valid_functionals(cfg, K)[0])
    w = d_capacitor_word(cfg, K, CapacitorSpec(th, 1, 0, True), 0)
    assert w.weight == 8 and is_codeword(cfg, K, w)
    cfg, K = kset(3, 3, "rnc")
    th = tuple(int(x) for x in codes.valid_functionals(cfg, K)[0])
    a = d_capacitor_word(cfg, K, CapacitorSpec(th, 1, 0, True), 0)
    b = capacitor_word(cfg, K, CapacitorSpec(th, 1, 0), 0)
    assert np.array_equal(a.entries, b.entries)


@pytest.mark.parametrize("p", [5, 7])
def test_kgon_words(p):
    F = field_create(p)
    hexagon, octagon = kgon_words(F)
    cfg = geometry(p, 2)
    assert hexagon.weight == 6 and is_codeword(cfg, kgon_kset(F, 3), hexagon)
    assert octagon.weight == 8 and is_codeword(cfg, kgon_kset(F, 4), octagon)
    with pytest.raises(CodeError):
        kgon_word(field_create(3), 4)


def test_membership_examples():
    cfg, K = kset(3, 3, "rnc")
    assert is_codeword(cfg, K, Codeword("P", 2, np.zeros(27, dtype=np.int64)))
    delta = np.zeros(27, dtype=np.int64)
    delta[5] = 1
    assert not is_codeword(cfg, K, Codeword("P", 2, delta))


def test_codeword_json_round_trip():
    w = Codeword("L", 3, np.array([0, 1, 2, 0]))
    back = Codeword.from_json(w.to_json())
    assert back.domain == "L" and back.char == 3 and np.array_equal(back.entries, w.entries)
    with pytest.raises(CodeError):
        Codeword.from_json('{"domain": "L", "char": 3, "entries": [5]}')
    with pytest.raises(CodeError):
        Codeword.from_json('{"domain": "X", "char": 3, "entries": [1]}')


def test_dimension_examples():
    assert code_dims(*kset(2, 3, "rnc"), 3) == (2, 2)
    assert code_dims(*kset(4, 3, "hyperoval"), 3)[1] == 18
    assert code_dims(*kset(2, 3, "full"), 3) == (20, 0)


def test_spanning_examples():
    rep = verify_spanning(*kset(2, 3, "rnc"), "plane_words_C", 3)
    assert (rep.span_dim, rep.code_dim) == (2, 2)
    rep = verify_spanning(*kset(4, 3, "hyperoval"), "capacitors_D", 3)
    assert (rep.span_dim, rep.code_dim) == (18, 18)
    rep = verify_spanning(*kset(2, 3, "full"), "capacitors_D", 3)
    assert rep.family_size == 0 and rep.equal
    with pytest.raises(CodeError):
        verify_spanning(*kset(2, 3, "full"), "capacitors_D", 2)


def test_wenger_minimum_weight():
    rep = min_weight(*kset(2, 3, "rnc"), "C", 3)
    assert rep.exact and rep.value == 4 and rep.method == "enumeration"


@pytest.mark.parametrize("q,n,spec,which,ell", [
    (2, 3, "rnc", "C", 3), (2, 3, "rnc", "D", 3), (3, 2, "random:2:1", "D", 2),
    (2, 2, "random:2:0", "D", 3), (2, 3, "line", "D", 2), (3, 2, "random:1:0", "C", 2),
])
def test_min_weight_matches_brute_force(q, n, spec, which, ell):
    cfg, K = kset(q, n, spec)
    N = build_incidence(cfg, K).to_dense()
    H = N if which == "C" else N.T
    rep = min_weight(cfg, K, which, ell)
    assert rep.exact and rep.value == brute_min_weight(H, ell)


@pytest.mark.parametrize("p,size,expected", [(5, 3, 6), (7, 3, 6), (5, 4, 8), (7, 4, 8)])
def test_kgon_min_weight_over_rationals(p, size, expected):
    F = field_create(p)
    K = kgon_kset(F, size)
    rep = min_weight(K.cfg, K, "D", 0)
    assert rep.exact and rep.value == expected and rep.method == "bounds-meet"


def test_floor_for_c():
    cfg, K = kset(3, 2, "full")
    rep = min_weight(cfg, K, "C", 2)
    assert rep.value >= 4


def test_characteristic_p_words():
    for p in (3, 5):
        cfg, K = kset(p, 3, "line")
        v = next(d for d in K.directions)
        w = parallel_pair_word(cfg, K, v, p)
        assert w.weight == 2 * len(K) - 2 and is_codeword(cfg, K, w)
        assert not is_codeword(cfg, K, parallel_pair_word(cfg, K, v, 0))
    cfg, K = kset(2, 2, "full")
    ones = all_ones_word(cfg, 2)
    assert ones.weight == len(K) + 1 and is_codeword(cfg, K, ones)


def test_budget_exhaustion_reports_bounds():
    cfg, K = kset(7, 2, "full")
    rep = min_weight(cfg, K, "D", 7, budget=2000)
    assert not rep.exact and rep.lower <= rep.upper
