import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from poissondisk.exceptions import DomainError, KernelSingularityError
from poissondisk.kernels import (
    BoundaryAngle,
    DiskPoint,
    green_kernel,
    poisson_kernel,
    scaled_green_dw,
    scaled_green_dwbar,
    scaled_poisson_dw,
    scaled_poisson_dwbar,
)

from conftest import fd_wirtinger

radius = st.floats(0.0, 0.95)
angle = st.floats(0.0, 2 * np.pi)


def point(r, t):
    return r * np.exp(1j * t)


def P(u, t):
    return (1 - abs(u) ** 2) / abs(1 - u * np.exp(-1j * t)) ** 2


def G(u, zeta):
    return np.log(abs(1 - u * np.conj(zeta)) / abs(u - zeta))


class TestDiskPoint:
    def test_roundtrip(self):
        p = DiskPoint.from_complex(0.3 - 0.4j)
        assert p.z == 0.3 - 0.4j
        assert p.distance == pytest.approx(0.5)

    def test_outside_rejected(self):
        with pytest.raises(DomainError):
            DiskPoint(0.8, 0.6)

    def test_closed_allows_circle(self):
        assert abs(DiskPoint.closed(1j).z) == 1.0
        with pytest.raises(DomainError):
            DiskPoint.closed(1.1)


def test_boundary_angle_wraps():
    assert BoundaryAngle(2 * np.pi + 0.5) == BoundaryAngle(0.5)
    assert BoundaryAngle(-0.5).theta == pytest.approx(2 * np.pi - 0.5)


class TestGreen:
    def test_pole_at_origin(self):
        # G(z, 0) = -log|z|
        assert green_kernel(0.5, 0.0) == pytest.approx(np.log(2.0))

    def test_vanishes_on_circle(self):
        assert abs(green_kernel(np.exp(0.7j) * (1 - 1e-13), 0.3)) < 1e-10

    def test_collision(self):
        with pytest.raises(KernelSingularityError):
            green_kernel(0.2, 0.2)

    @given(radius, angle, radius, angle)
    def test_symmetric_and_positive(self, r1, t1, r2, t2):
        z, w = point(r1, t1), point(r2, t2)
        assume(abs(z - w) > 1e-6)
        gzw = green_kernel(z, w)
        assert gzw > 0
        assert gzw == pytest.approx(green_kernel(w, z), rel=1e-10)
        assert gzw == pytest.approx(G(z, w), rel=1e-9)


class TestPoisson:
    def test_at_origin(self):
        assert poisson_kernel(0.0, 1.3) == pytest.approx(1.0)

    def test_mean_one(self):
        t = 2 * np.pi * np.arange(512) / 512
        assert np.mean(poisson_kernel(0.6 + 0.2j, t)) == pytest.approx(1.0, abs=1e-12)

    def test_accepts_boundary_angle(self):
        assert poisson_kernel(0.5, BoundaryAngle(0.0)) == pytest.approx(3.0)

    def test_outside_rejected(self):
        with pytest.raises(DomainError):
            poisson_kernel(1.0, 0.0)


@settings(max_examples=60)
@given(radius, angle, radius, angle, st.floats(0.1, 1.0), angle)
def test_scaled_poisson_derivatives(rz, tz, ru, tu, r, t):
    z = point(rz, tz) * 0.5
    w = z + r * point(ru, tu) * 0.9
    F = lambda x: P((x - z) / r, t)
    dw, dwb = fd_wirtinger(F, w, h=1e-5 * r)
    scale = max(abs(dw), 1.0 / r)
    assert abs(scaled_poisson_dw(w, z, r, t) - dw) < 1e-6 * scale
    assert abs(scaled_poisson_dwbar(w, z, r, t) - dwb) < 1e-6 * scale


@settings(max_examples=60)
@given(radius, angle, radius, angle, st.floats(0.1, 1.0), st.floats(0.0, 1.0), angle)
def test_scaled_green_derivatives(rz, tz, ru, tu, r, rho, s):
    z = point(rz, tz) * 0.5
    w = z + r * point(ru, tu) * 0.9
    zeta = point(rho, s)
    u = (w - z) / r
    assume(abs(u - zeta) > 0.05)
    F = lambda x: G((x - z) / r, zeta)
    dw, dwb = fd_wirtinger(F, w, h=1e-6 * r)
    scale = max(abs(dw), 1.0 / r)
    assert abs(scaled_green_dw(w, z, r, zeta) - dw) < 1e-6 * scale
    assert abs(scaled_green_dwbar(w, z, r, zeta) - dwb) < 1e-6 * scale


def test_green_dwbar_is_conjugate():
    w, z, r, zeta = 0.3 + 0.1j, 0.1, 0.7, 0.2 - 0.5j
    assert scaled_green_dwbar(w, z, r, zeta) == pytest.approx(np.conj(scaled_green_dw(w, z, r, zeta)))


def test_scaled_green_on_circle_is_zero():
    # |zeta| = 1 makes G vanish identically in w
    assert abs(scaled_green_dw(0.2, 0.0, 1.0, 1j)) == 0.0


def test_scaled_args_validated():
    with pytest.raises(DomainError):
        scaled_poisson_dw(0.9, 0.0, 0.5, 0.0)
    with pytest.raises(DomainError):
        scaled_poisson_dw(0.1, 0.0, -1.0, 0.0)
    with pytest.raises(KernelSingularityError):
        scaled_green_dw(0.25, 0.0, 0.5, 0.5)


def test_vectorised():
    w = np.array([0.1, 0.2j, -0.3])
    out = scaled_poisson_dw(w, 0.0, 1.0, 0.4)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(scaled_poisson_dw(0.2j, 0.0, 1.0, 0.4))
