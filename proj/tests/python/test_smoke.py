import numpy as np
import pytest

import osserman_lab as ol


def test_radon_bound():
    assert ol.radon_bound(8) == 7
    assert ol.radon_bound(16) == 8
    assert ol.radon_bound(7) == 0
    assert ol.min_module_dim(8) == 16


def test_octonion_arithmetic():
    e1 = [0.0] * 8
    e1[1] = 1.0
    e2 = [0.0] * 8
    e2[2] = 1.0
    e3 = ol.oct_mul(e1, e2)
    assert e3[3] == 1.0 and sum(abs(v) for v in e3) == 1.0
    table = ol.octonion_table()
    assert len(table) == 8 and table[1][2] == (1.0, 3)


def test_clifford_osserman_roundtrip():
    sys = ol.generate(6, 1, 1.0, [1.0], seed=3)
    assert ol.validate(sys)["pass"]
    r = ol.from_clifford(sys)
    assert r.shape == (6, 6, 6, 6)
    rep = ol.osserman_check(r, samples=40)
    assert rep["is_osserman"]
    assert rep["spectrum"]["values"] == pytest.approx([0.0, 1.0, 4.0], abs=1e-10)
    assert rep["spectrum"]["multiplicities"] == [1, 4, 1]


def test_weyl_decomposition():
    r = ol.model_tensor(1, 1, 6)
    w = ol.weyl(r)
    assert np.max(np.abs(ol.ricci(w))) < 1e-10
    assert ol.weyl_norm_sq(ol.model_weyl(1, 1, 1.0, 6)) == pytest.approx(
        ol.c_const(1, 6), rel=1e-9
    )


def test_extension_dichotomy():
    quat = ol.generate(8, 3, 1.0, [1.0, 1.0, 1.0], seed=0)
    assert ol.classify_r8(quat) == "Cliff3Special"
    with pytest.raises(Exception):
        ol.extend_to_seven(quat, 1.0)


def test_sphere_chart_matches_constant_curvature():
    r = ol.riemann_at("sphere", 4, [0.1, -0.05, 0.08, 0.02], h=1e-3)
    unit = ol.from_clifford(ol.generate(4, 0, 1.0, [], seed=0))
    assert np.max(np.abs(r - unit)) < 1e-5
