import numpy as np
import pytest

from elastic_muskat.dn import (DNConfig, FlatStrip, InfiniteDepth,
                               dn_fixed_point, dn_shape_difference, dn_upper,
                               harmonic_lift, make_vertical_grid)
from elastic_muskat.dn_oracle import oracle_dn
from elastic_muskat.errors import DegenerateJacobian, NotContracting
from elastic_muskat.grid import Field, PeriodicGrid, mean


GRID = PeriodicGrid(64, 2.0 * np.pi)
X = GRID.nodes


def test_flat_interface_infinite_depth():
    f = Field(GRID, np.cos(2 * X))
    res = dn_fixed_point(Field(GRID, np.zeros(GRID.n)), f)
    assert res.converged
    assert res.iterations <= 2
    assert np.max(np.abs(res.gf.values - 2 * np.cos(2 * X))) < 1e-12
    assert np.max(np.abs(res.remainder.values)) < 1e-12


def test_flat_strip_exact_multiplier():
    h = 1.0
    for k in (1, 2, 3):
        f = Field(GRID, np.cos(k * X))
        res = dn_fixed_point(Field(GRID, np.zeros(GRID.n)), f,
                             geometry=FlatStrip(h))
        exact = k * np.tanh(k * h) * np.cos(k * X)
        assert np.max(np.abs(res.gf.values - exact)) < 1e-12


def test_mean_of_gf_vanishes():
    eta = Field(GRID, 0.1 * np.sin(X))
    res = dn_fixed_point(eta, Field(GRID, np.cos(2 * X)))
    assert abs(mean(res.gf)) < 1e-13


def test_positivity():
    eta = Field(GRID, 0.1 * np.sin(X))
    f = Field(GRID, np.cos(X) + 0.3 * np.sin(2 * X))
    res = dn_fixed_point(eta, f)
    assert np.sum(res.gf.values * f.values) > 0


def test_contraction_gate():
    eta = Field(GRID, 0.8 * np.sin(X))
    with pytest.raises(NotContracting):
        dn_fixed_point(eta, Field(GRID, np.cos(X)))


def test_gate_override():
    eta = Field(GRID, 0.1 * np.cos(2 * X))
    cfg = DNConfig(lipschitz_gate=1.0)
    res = dn_fixed_point(eta, Field(GRID, np.sin(X)), cfg)
    assert res.converged


def test_residual_contraction():
    eta = Field(GRID, 0.1 * np.sin(X))
    res = dn_fixed_point(eta, Field(GRID, np.cos(2 * X)))
    r = res.residuals
    assert r[-1] < r[0]
    assert res.converged


def test_oracle_agreement_infinite_depth():
    eta = Field(GRID, 0.05 * np.sin(X))
    f = Field(GRID, np.cos(X))
    gf = dn_fixed_point(eta, f).gf
    ref = oracle_dn(eta, f)
    rel = np.linalg.norm(gf.values - ref.values) / np.linalg.norm(ref.values)
    assert rel < 1e-3


def test_oracle_agreement_strip():
    eta = Field(GRID, 0.1 * np.sin(X))
    f = Field(GRID, np.cos(X))
    gf = dn_fixed_point(eta, f, geometry=FlatStrip(1.0)).gf
    ref = oracle_dn(eta, f, geometry=FlatStrip(1.0))
    rel = np.linalg.norm(gf.values - ref.values) / np.linalg.norm(ref.values)
    assert rel < 1e-4


def test_upper_reflection_flat():
    f = Field(GRID, np.cos(X))
    res = dn_upper(Field(GRID, np.zeros(GRID.n)), f)
    # G+(0) = -|D| acting on the data gives -cos(x) here, remainder ~ 0
    assert np.max(np.abs(res.gf.values + np.cos(X))) < 1e-12
    assert np.max(np.abs(res.remainder.values)) < 1e-12


def test_upper_reflection_identity():
    eta = Field(GRID, 0.1 * np.sin(X))
    f = Field(GRID, np.cos(2 * X))
    up = dn_upper(eta, f).gf
    lo = dn_fixed_point(Field(GRID, -eta.values), f).gf
    assert np.max(np.abs(up.values + lo.values)) < 1e-12


def test_shape_difference_antisymmetry():
    e1 = Field(GRID, 0.05 * np.sin(X))
    e2 = Field(GRID, 0.05 * np.cos(X))
    f = Field(GRID, np.cos(2 * X))
    d12, rep12 = dn_shape_difference(e1, e2, f)
    d21, _ = dn_shape_difference(e2, e1, f)
    assert np.max(np.abs(d12.values + d21.values)) < 1e-12


def test_degenerate_jacobian():
    eta = Field(GRID, 2.5 * np.sin(X))
    cfg = DNConfig(lipschitz_gate=100.0)
    with pytest.raises((DegenerateJacobian, NotContracting)):
        dn_fixed_point(eta, Field(GRID, np.cos(X)), cfg)


def test_vertical_grid_shape():
    vg = make_vertical_grid(10.0, 32)
    assert vg.levels[0] == -10.0
    assert vg.levels[-1] == 0.0
    assert np.all(np.diff(vg.levels) > 0)
    assert abs(np.sum(vg.weights) - 10.0) < 1e-12


def test_harmonic_lift_matches_boundary():
    eta = Field(GRID, 0.1 * np.sin(X))
    vg = make_vertical_grid(5.0, 16)
    lift = harmonic_lift(eta, vg, InfiniteDepth())
    assert np.max(np.abs(lift[-1] - eta.values)) < 1e-12


def test_report_fields():
    eta = Field(GRID, 0.05 * np.sin(X))
    res = dn_fixed_point(eta, Field(GRID, np.cos(X)))
    rep = res.report()
    assert rep["converged"]
    assert rep["iterations"] >= 1
    assert rep["tail_bound"] < 1e-6
