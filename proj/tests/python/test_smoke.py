import math

import pytest

_rhm = pytest.importorskip("_rhm")


def test_group_meta():
    m = _rhm.group_meta("A 5")
    assert m["order"] == 60
    assert m["aut_order"] == 120
    assert m["out_order"] == 2
    assert m["h2_order"] == 2
    assert m["simple"]


def test_exact_p_z2():
    r = _rhm.exact_p_small_group("Z/2", 2)
    assert r["rational"] == "7/15"
    assert abs(r["value"] - 7 / 15) < 1e-12


def test_exact_p_orbits_a5():
    r = _rhm.exact_p("A 5", 2)
    assert r["e_classes"] == 19
    assert r["a_classes"] == 2016
    sizes = sorted(o["size"] for o in r["orbits"])
    assert sizes == [576, 1440]
    assert abs(r["p"]["value"] - 0.224281) < 1e-5
    assert r["expectation"]["rational"] == "361/1440"


def test_limit_probability():
    l = _rhm.limit_probability("A 7")
    assert abs(l["p_inf"] - 0.950) < 5e-4
    with pytest.raises(Exception):
        _rhm.limit_probability("Z/4")


def test_monte_carlo_small():
    r = _rhm.monte_carlo_p("Z/2", 2, 20000, 200, 7)
    assert 0 <= r["estimate"] <= 1
    assert r["ci_low"] <= r["estimate"] <= r["ci_high"]


def test_balanced_exact():
    b = _rhm.balanced_exact("A 5", 2)
    assert b["classes"] == 19
    assert abs(b["p_binomial"] - 0.0052646) < 1e-6


def test_afp():
    r = _rhm.afp_probability(2, 2, [])
    assert r["rational"] == "3/8"
    r = _rhm.afp_probability(2, 2, [0, 1])
    assert r["rational"] == "3/128"
    assert abs(_rhm.all_cyclic_probability(2) - 0.924) < 2e-3


def test_symplectic():
    assert _rhm.sp_order(2, 2) == 720
    assert _rhm.count_lagrangians(2, 2) == 15
    c = _rhm.homology_dim_distribution(2, 2)
    assert abs(c[0] - 8 / 15) < 1e-12
    assert abs(sum(c) - 1) < 1e-12


def test_walk_homology():
    h = _rhm.walk_homology(2, 2000, 5, 0)
    h2 = _rhm.walk_homology(2, 2000, 5, 0)
    assert h == h2
    if h["finite"]:
        assert h["order"] >= 1


def test_relator():
    assert _rhm.beta_value(12) == 24
    d = _rhm.primitive_kernel_density(2, 0, 500)
    assert d["exhaustive"]
    assert abs(d["density"] - 1 / 3) < 0.01
    t = _rhm.torus_image_distribution("A 5")
    assert t["total_pairs"] == 300
    z5 = [r for r in t["rows"] if r["type"] == "Z/5"][0]
    assert z5["count"] == 144


def test_class_distribution():
    d = _rhm.class_distribution("PSL(2,5)", 3, 50, 1)
    assert d["h2_order"] == 2
    assert sum(d["counts"].values()) == 50


def test_complexes():
    s = _rhm.surface_statistics(100, 200, 3)
    assert s["euler_identity"]
    assert s["mean_vertices"] <= 1.5 * math.log(100) + 6
    e = _rhm.tet_manifold_probability(2, 50, 4, -1, 21)
    assert abs(e["p_hat"] - 3273 / 8505) < 1e-9


def test_betti_trend():
    t = _rhm.betti_trend("Z/2", 2, [50, 200], 40, 3)
    assert len(t) == 2
    for pt in t:
        assert pt["extending"] == 40
        assert 0 <= pt["freq"] <= 1
