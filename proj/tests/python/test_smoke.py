from fractions import Fraction

import pytest

import surfmaps as sm


def test_surface_names():
    assert sm.parse_surface("torus") == (0, True)
    assert sm.parse_surface("chi:-1,n") == (-1, False)
    with pytest.raises(sm.MapError):
        sm.parse_surface("donut")


def test_two_edge_counts():
    counts = {s: sm.count_maps(2, surface=s) - sm.count_maps(1, surface=s) for s in ("sphere", "pp", "torus", "klein")}
    assert counts == {"sphere": 9, "pp": 10, "torus": 1, "klein": 4}


def test_open_close_round_trip():
    maps = sm.enumerate_maps(3, filters="bipartite,pointed", min_euler=0)
    assert maps
    for m in maps:
        u = sm.open_map(m)
        assert sm.classify(u)["well_blossoming"]
        assert sm.canonical_encoding(sm.close_map(u)) == sm.canonical_encoding(m)


def test_opening_refuses_non_bipartite():
    m = sm.enumerate_maps(1, surface="pp")[0]
    with pytest.raises(sm.MapError):
        sm.open_map(m)


def test_quadrangulation_inverse():
    for m in sm.enumerate_maps(2, surface="klein"):
        q = sm.quadrangulate(m)
        assert sm.cells(q)["faces"] == sm.cells(m)["edges"]
        assert sm.canonical_encoding(sm.quadrangulate_inverse(q)) == sm.canonical_encoding(m)


def test_walk_series_methods_agree():
    a = sm.motzkin(8, "closed_form")
    assert a == sm.motzkin(8, "fixed_point") == sm.motzkin(8, "direct")
    assert all(isinstance(c, Fraction) for c in a["B"].values())


def test_torus_series_from_schemes():
    r = sm.rooted_series_from_schemes("torus", 4)
    # one rooted torus map with two edges: one vertex, one face
    assert r[(1, 1)] == 1
    assert sm.count_maps(3, surface="torus") - sm.count_maps(2, surface="torus") == sum(c for e, c in r.items() if sum(e) == 3)


def test_verify_suite():
    (res,) = sm.verify("roundtrip", edges=3)
    assert res["criterion"] == 1 and res["pass"]
