import numpy as np
import pytest
from scipy import integrate

from poissondisk.catalog import catalog_listing, default_catalog, parse_map, CatalogMap
from poissondisk.exceptions import DegeneratePointError, DomainError, SenseReversalError
from poissondisk.geometry import (
    effective_K,
    image_area,
    isoperimetric_check,
    perimeter,
    perimeter_sup,
    polyline_length,
    qc_constant,
    radial_length,
    radial_length_sup,
)
from poissondisk.kernels import BoundaryAngle


def shear_perimeter_quad(beta):
    # |d/dtheta (e^{it} + beta e^{-it})| = |1 - beta e^{-2it}|
    return integrate.quad(lambda t: abs(1 - beta * np.exp(-2j * t)), 0, 2 * np.pi,
                          epsabs=1e-13, epsrel=1e-13)[0]


class TestCatalog:
    @pytest.mark.parametrize("label,K", [("identity", 1.0), ("scale:2", 1.0), ("shear:0.5", 3.0),
                                         ("quadratic-source:0.1", 1.25), ("cubic:0.1", 1.3 / 1.1)])
    def test_exact_K(self, label, K):
        assert parse_map(label).exact_K == pytest.approx(K)

    def test_qc_grid_estimate_matches(self):
        for m in default_catalog(sense_preserving_only=True):
            assert qc_constant(m) <= m.exact_K * (1 + 1e-9)
            assert qc_constant(m) >= m.exact_K * 0.99

    def test_source_norms(self):
        assert parse_map("quadratic-source:0.1").source.sup_norm == pytest.approx(0.404)
        assert parse_map("cubic:0.1").source.sup_norm == pytest.approx(0.808)

    def test_bad_labels(self):
        with pytest.raises(KeyError):
            parse_map("bogus")
        with pytest.raises(ValueError):
            parse_map("shear:1.5")
        with pytest.raises(ValueError):
            parse_map("scale")

    def test_inconsistent_source_rejected(self):
        with pytest.raises(ValueError):
            CatalogMap("bad", lambda z: z * np.abs(z) ** 2, lambda z: 2 * np.abs(z) ** 2,
                       lambda z: z * z, lambda z: 0 * z)

    def test_listing(self):
        rows = {r["label"]: r for r in catalog_listing()}
        assert rows["identity"]["K"] == "1" and rows["identity"]["g"] == "0"
        assert rows["scale:M"]["K"] == "1"
        assert rows["quadratic-source:c"]["g"] == "4c"


class TestLengths:
    def test_scale_perimeter(self):
        assert perimeter(parse_map("scale:2"), 1.0) == pytest.approx(4 * np.pi, rel=1e-14)

    def test_shear_perimeter_quad(self):
        assert perimeter(parse_map("shear:0.5"), 1.0) == pytest.approx(shear_perimeter_quad(0.5), rel=1e-12)

    def test_polyline_converges(self):
        m = parse_map("cubic:0.1")
        assert polyline_length(m, 0.9, 8192) == pytest.approx(perimeter(m, 0.9), rel=1e-6)

    def test_profile(self):
        prof = perimeter_sup(parse_map("identity"))
        assert prof.monotone and not prof.increasing_at_end
        assert prof.sup_estimate == pytest.approx(2 * np.pi)
        with pytest.raises(ValueError):
            perimeter_sup(parse_map("identity"), [0.5, 0.2])

    def test_radius_checked(self):
        with pytest.raises(DomainError):
            perimeter(parse_map("identity"), 1.2)

    def test_radial_length(self):
        m = parse_map("shear:0.5")
        assert radial_length(m, BoundaryAngle(0.0), 1.0) == pytest.approx(1.5)
        assert radial_length(m, np.pi / 2, 1.0) == pytest.approx(0.5)
        assert radial_length_sup(m) == pytest.approx(1.5)
        assert radial_length_sup(parse_map("scale:5")) == pytest.approx(5.0)


class TestArea:
    def test_ellipse(self):
        assert image_area(parse_map("shear:0.5")) == pytest.approx(0.75 * np.pi, rel=1e-12)

    def test_sense_reversal(self):
        flip = CatalogMap("conj", np.conj, lambda z: 0 * z, lambda z: 1 + 0 * z, lambda z: 0 * z)
        with pytest.raises(SenseReversalError):
            image_area(flip)

    def test_isoperimetric(self):
        for m in default_catalog(sense_preserving_only=True):
            assert isoperimetric_check(m).holds
        res = isoperimetric_check(parse_map("scale:2"))
        assert res.area == pytest.approx(res.bound, rel=1e-12)


def test_degenerate_qc():
    with pytest.raises(DegeneratePointError):
        qc_constant(parse_map("constant:1"))


def test_effective_K_inflates_estimates(unit_source_solution):
    assert effective_K(parse_map("shear:0.5")) == (3.0, "exact")
    est, kind = effective_K(PoissonSolution_like_identity())
    assert kind == "grid" and est == pytest.approx(1.01)


def PoissonSolution_like_identity():
    from poissondisk.solver import PoissonSolution
    return PoissonSolution(boundary_nodes=256).fit(lambda e: e)
