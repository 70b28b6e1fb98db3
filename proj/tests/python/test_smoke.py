import math

import pytest

import avgpower as ap


def test_densities():
    model = ap.BinomialModel(100)
    assert ap.binom_pmf(50, model, 0.5) == pytest.approx(0.07958923738717876, rel=1e-12)
    assert ap.beta_binom_pmf(7, model, ap.BetaPrior(1, 1)) == pytest.approx(1 / 101)
    g = ap.posterior_density(0.3, 40, model, ap.NON_INFORMATIVE)
    r = ap.likelihood_ratio(0.3, 40, model, ap.NON_INFORMATIVE)
    assert g * r == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ap.log_gamma(0.0)


def test_matrix_and_region():
    cfg = ap.TestConfig(0.05, ap.BinomialModel(100), ap.INFORMATIVE)
    m = ap.build_decision_matrix(cfg)
    assert len(m.rows) == 499
    assert max(ap.type1_error(m, i) for i in range(499)) <= 0.05
    region = ap.confidence_region(m, 50)
    assert region.contiguous
    assert 0.4 < region.lower < region.upper < 0.6


def test_power_and_table():
    cfg = ap.TestConfig(0.05, ap.BinomialModel(100), ap.INFORMATIVE)
    m = ap.build_decision_matrix(cfg)
    i = cfg.grid.points.index(min(cfg.grid.points, key=lambda e: abs(e - 0.45)))
    assert ap.power(m, 0.55, i) == pytest.approx(0.62, abs=0.01)
    cells = ap.table1(cfg)
    expected = [[0.185, 0.154], [0.664, 0.798]]
    for r in range(2):
        for c in range(2):
            assert cells[r][c] == pytest.approx(expected[r][c], abs=0.01)


def test_clopper_pearson_and_mc():
    cp = ap.clopper_pearson(50, ap.BinomialModel(100), 0.05)
    assert cp.lower == pytest.approx(0.39832112950330106, abs=1e-6)
    small = ap.TestConfig(0.05, ap.BinomialModel(20), ap.NON_INFORMATIVE,
                          ap.ParameterGrid.uniform(49, 0.02, 0.98))
    assert ap.mc_validate_binomial(small, seed=3) >= 0.95
    assert not math.isnan(cp.upper)
