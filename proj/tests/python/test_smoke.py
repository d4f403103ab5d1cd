import json
import math

import pytest

import mwi


def split():
    return mwi.DiscreteMeasure.from_1d([-1.0, 1.0], [0.5, 0.5])


def test_measure_roundtrip():
    mu = mwi.DiscreteMeasure([[1.0], [1.0], [2.0]], [0.25, 0.25, 0.5])
    assert len(mu) == 2
    assert mu.weights == pytest.approx([0.5, 0.5])
    back = mwi.DiscreteMeasure.from_json(mu.to_json())
    assert back.approx_equal(mu)
    assert json.loads(mu.to_json())["dim"] == 1


def test_transport_and_martingale():
    d0 = mwi.DiscreteMeasure.dirac([0.0])
    value, coupling = mwi.wasserstein(d0, mwi.DiscreteMeasure.dirac([1.0]), q=2)
    assert value == pytest.approx(1.0)
    assert coupling == [(0, 0, 1.0)]
    b = mwi.mot_bounds(d0, split(), rho=3)
    assert b["lower_cost"] == pytest.approx(1.0)
    assert b["upper_cost"] == pytest.approx(1.0)
    assert mwi.check_convex_order(d0, split())
    with pytest.raises(mwi.NotInConvexOrder):
        mwi.mot_bounds(split(), d0, rho=2)


def test_family_and_ratio():
    mu, nu, coupling = mwi.family_1d(2, 1.0)
    assert [p[0] for p in nu.points] == [0.0, 1.0, 2.0, 3.0]
    assert len(coupling) == 4
    r = mwi.ratio(mu, nu, rho=1.0, q=1.0)
    assert r["w_q"] == pytest.approx(0.5)
    assert r["ratio_upper"] >= 2.0 - 1e-9
    assert mwi.sigma_index(1.5, 1.0) == math.inf
    assert mwi.family_ratio(10000, 1.0, 2.0, 1.0) == pytest.approx(2.0, rel=1e-3)
    assert mwi.asymptotics(1.5, 1.0, 0.0)[1] == pytest.approx(0.5)
    with pytest.raises(mwi.DegenerateDenominator):
        mwi.ratio(split(), split(), rho=2.0)


def test_norms_and_moments():
    nu = mwi.DiscreteMeasure([[0.0, 0.0], [2.0, 0.0]], [0.5, 0.5])
    assert mwi.central_moment(nu, math.inf) == pytest.approx(1.0)
    assert mwi.central_moment(nu, 2.0, "sup") == pytest.approx(1.0)
    assert mwi.Norm("p:1")([3.0, -4.0]) == pytest.approx(7.0)
    with pytest.raises(mwi.InvalidArgument):
        mwi.Norm("taxicab")


def test_lemma_constants():
    c = mwi.lemma_constants(3.0)
    assert c.kappa == pytest.approx(1.0 + 1.0 / math.sqrt(2.0), rel=1e-9)
    assert c.kappa_tilde >= 1.5
    assert mwi.theoretical_bound(3.0, mwi.Norm(), 1, c) == pytest.approx(
        2 * c.kappa * c.kappa_tilde)
    assert mwi.verify_pointwise(3.0, 4, 2000, c, seed=1)["passed"]
    assert mwi.lemma_constants(2.0).kappa == 1.0


def test_acceptance_entry_point():
    passed, line = mwi.run_criterion(9)
    assert passed
    assert line.startswith("[PASS] criterion 9")
