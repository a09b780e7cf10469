import json
from itertools import combinations

import pytest

from conftest import geometry, kset
from fingeo.gf import rank
from fingeo.ksets import KSetError, build_kset, is_hyperoval, load_kset, make_kset, random_kset, save_kset


def no_three_collinear(cfg, dirs):
    return all(rank(cfg.fld, list(t)) == 3 for t in combinations(dirs, 3))


@pytest.mark.parametrize("q", [2, 4, 8])
def test_hyperoval_is_arc_of_size_q_plus_2(q):
    cfg, K = kset(q, 3, "hyperoval")
    assert len(K) == q + 2
    assert no_three_collinear(cfg, K.directions)
    assert is_hyperoval(K)


def test_hyperoval_rejections():
    cfg, K = kset(4, 3, "hyperoval")
    assert not is_hyperoval(K.without(K.directions[0]))
    dirs = [(0, 1, 0), (0, 1, 1), (0, 1, 2), (1, 0, 0), (1, 1, 1), (1, 2, 3)]
    assert not is_hyperoval(make_kset(cfg, dirs))
    with pytest.raises(KSetError):
        kset(3, 3, "hyperoval")
    with pytest.raises(KSetError):
        kset(4, 2, "hyperoval")


def test_rnc_points():
    cfg, K = kset(4, 3, "rnc")
    F = cfg.fld
    assert set(K.directions) == {(1, t, F.mul(t, t)) for t in range(4)}


def test_line_specs():
    cfg, K = kset(3, 3, "line")
    assert len(K) == 4
    assert build_kset(cfg, "line:full").directions == K.directions
    sub = build_kset(cfg, "line:minus:1,0,0")
    assert len(sub) == 3 and (1, 0, 0) not in sub
    three = build_kset(cfg, "line:1,0,0;0,1,0;1,1,0")
    assert len(three) == 3
    with pytest.raises(KSetError):
        build_kset(cfg, "line:1,0,0;0,1,0;0,0,1")
    with pytest.raises(KSetError):
        build_kset(cfg, "line:minus:0,0,1")


def test_normalization_and_dedup():
    cfg = geometry(3, 2)
    K = make_kset(cfg, [(2, 2), (1, 1), (0, 2)])
    assert K.directions == ((0, 1), (1, 1))
    with pytest.raises(KSetError):
        make_kset(cfg, [(0, 0)])
    with pytest.raises(KSetError):
        make_kset(cfg, [(3, 1)])


def test_random_is_deterministic_and_sized():
    cfg = geometry(5, 3)
    a, b = random_kset(cfg, 10, 7), random_kset(cfg, 10, 7)
    assert a.directions == b.directions and len(a) == 10
    assert random_kset(cfg, 10, 8).directions != a.directions
    assert len(random_kset(cfg, cfg.num_h_points, 1)) == cfg.num_h_points
    with pytest.raises(KSetError):
        random_kset(cfg, cfg.num_h_points + 1, 0)


def test_bad_specs():
    cfg = geometry(2, 2)
    for spec in ("nope", "random:3", "random:a:b", "line:1,x"):
        with pytest.raises(KSetError):
            build_kset(cfg, spec)


def test_file_round_trip(tmp_path):
    cfg = geometry(5, 2)
    K = make_kset(cfg, [(1, 0), (0, 1), (1, 1)])
    path = tmp_path / "k.json"
    save_kset(K, path)
    assert json.loads(path.read_text())["directions"] == [[0, 1], [1, 0], [1, 1]]
    assert load_kset(path).directions == K.directions
    assert build_kset(cfg, f"file:{path}").directions == K.directions
    with pytest.raises(KSetError):
        build_kset(geometry(5, 3), f"file:{path}")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(KSetError):
        load_kset(bad)
