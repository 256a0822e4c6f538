import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poissondisk.quadrature import (
    centered_disk_rule,
    clustered_unit_interval,
    distance_to_circle,
    gauss_legendre,
    local_disk_rule,
    periodic_trapezoid,
    polar_grid,
)


def test_gauss_legendre_polynomial_exact():
    x, w = gauss_legendre(0.0, 2.0, 5)
    assert np.sum(w * x ** 9) == pytest.approx(2.0 ** 10 / 10)


def test_periodic_trapezoid_spectral():
    t, w = periodic_trapezoid(64)
    assert np.sum(w) == pytest.approx(2 * np.pi)
    assert np.sum(w * np.exp(np.cos(t))) == pytest.approx(2 * np.pi * 1.2660658777520082, rel=1e-14)


def test_clustered_interval():
    t, w = clustered_unit_interval(32)
    t, w = np.ravel(t), np.ravel(w)
    assert np.sum(w) == pytest.approx(1.0)
    assert np.sum(w * t ** 3) == pytest.approx(0.25)


@given(st.floats(0.0, 0.999), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
def test_distance_to_circle(r, a, phi):
    z = r * np.exp(1j * a)
    R = distance_to_circle(z, phi)
    assert abs(z + R * np.exp(1j * phi)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("z", [0.0, 0.5 + 0.3j, 0.9999])
def test_centered_rule_area(z):
    nodes, w = centered_disk_rule(np.array([z]))
    assert np.sum(w) == pytest.approx(np.pi, rel=1e-12)
    assert np.sum(w * np.abs(nodes) ** 2) == pytest.approx(np.pi / 2, rel=1e-10)


def test_local_rule_area():
    nodes, w = local_disk_rule(np.array([0.2, 0.5j]), np.array([0.1, 0.3]))
    assert np.sum(w, axis=1) == pytest.approx(np.pi * np.array([0.01, 0.09]))


def test_polar_grid_shape():
    g = polar_grid(8, 16, r_max=0.99)
    assert np.abs(g).max() == pytest.approx(0.99)
    assert np.any(g == 0)
    assert np.all(np.abs(g) <= 0.99 + 1e-15)
