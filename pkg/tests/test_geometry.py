"""
几何结构, 取向采样与偶极耦合测试
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinscramble.core.hamiltonians import CouplingSet, CouplingUnits
from spinscramble.geometry.couplings import (
    MAGIC_ANGLE,
    connected_group_curve,
    connected_group_size,
    couplings_for,
    dipolar_coupling,
)
from spinscramble.geometry.orientation import EnsembleSpec, Orientation, sample_orientations
from spinscramble.geometry.structure import (
    GAMMA_H1,
    GAMMA_P31,
    Geometry,
    Site,
    dipolar_prefactor,
    load_geometry,
    model_geometry,
    parse_geometry,
)
from spinscramble.utils.exceptions import GeometryError


def chain(*zs) -> Geometry:
    sites = [Site("P", 0.0, 0.0, 0.0)] + [Site(f"H{i}", 0.0, 0.0, z) for i, z in enumerate(zs, 1)]
    return Geometry(sites=tuple(sites), units=CouplingUnits.DIMENSIONLESS)


class TestDipolarCoupling:
    def test_magic_angle(self):
        assert dipolar_coupling(1.7, MAGIC_ANGLE) == 0.0
    
    def test_parallel(self):
        assert dipolar_coupling(1.0, 0.0) == pytest.approx(2.0)
    
    def test_perpendicular(self):
        assert dipolar_coupling(2.0, np.pi / 2) == pytest.approx(-0.125)
    
    def test_scale(self):
        assert dipolar_coupling(1.0, 0.0, scale=3.0) == pytest.approx(6.0)
    
    @pytest.mark.parametrize("r", [0.0, -1.0])
    def test_non_positive_distance(self, r):
        with pytest.raises(GeometryError):
            dipolar_coupling(r, 0.0)


class TestCouplings:
    def test_single_site_on_axis(self):
        c = couplings_for(Orientation.along_z(), chain(1.0))
        assert_allclose(c.hetero, [2.0])
    
    def test_collinear_chain(self):
        c = couplings_for(Orientation.along_z(), chain(1.0, 2.0))
        assert_allclose(c.hetero, [2.0, 0.25])
        assert_allclose(c.homo, [[0.0, 2.0], [2.0, 0.0]])
    
    def test_dimensionless_scale(self):
        geometry = chain(1.0).with_units(CouplingUnits.DIMENSIONLESS, 5.0)
        assert_allclose(couplings_for(Orientation.along_z(), geometry).hetero, [10.0])
    
    def test_translation_invariance(self, dimensionless_model):
        orientation = Orientation.from_vector([0.3, -0.2, 0.9])
        shifted = dimensionless_model.translated([1.0, -2.0, 0.5])
        a = couplings_for(orientation, dimensionless_model)
        b = couplings_for(orientation, shifted)
        assert_allclose(a.hetero, b.hetero, rtol=1e-10)
        assert_allclose(a.homo, b.homo, rtol=1e-10, atol=1e-14)
    
    def test_physical_prefactor(self):
        prefactor = dipolar_prefactor(GAMMA_P31, GAMMA_H1)
        assert 1e5 < prefactor < 2e5
        geometry = Geometry(sites=(Site("P", 0, 0, 0), Site("H", 0, 0, 2.0)))
        c = couplings_for(Orientation.along_z(), geometry)
        assert_allclose(c.hetero, [2.0 * prefactor / 8.0])
        assert c.units == CouplingUnits.PHYSICAL


class TestOrientation:
    def test_deterministic(self, dimensionless_model):
        spec = EnsembleSpec(n_orientations=1, seed=42, geometry=dimensionless_model)
        first = sample_orientations(spec)[0]
        second = sample_orientations(spec)[0]
        assert_allclose(first.vector, second.vector)
    
    def test_isotropic(self, dimensionless_model):
        spec = EnsembleSpec(n_orientations=10000, seed=7, geometry=dimensionless_model)
        vectors = np.array([o.vector for o in sample_orientations(spec)])
        assert_allclose(np.linalg.norm(vectors, axis=1), 1.0)
        assert np.linalg.norm(vectors.mean(axis=0)) <= 0.05
    
    def test_prefix_stable(self, dimensionless_model):
        small = sample_orientations(EnsembleSpec(3, 5, dimensionless_model))
        large = sample_orientations(EnsembleSpec(10, 5, dimensionless_model))
        for a, b in zip(small, large):
            assert_allclose(a.vector, b.vector)
    
    def test_invalid_spec(self, dimensionless_model):
        with pytest.raises(ValueError):
            EnsembleSpec(n_orientations=0, seed=1, geometry=dimensionless_model)
        with pytest.raises(ValueError):
            EnsembleSpec(n_orientations=1, seed=-1, geometry=dimensionless_model)
    
    def test_unit_vector_required(self):
        with pytest.raises(ValueError):
            Orientation(vector=np.array([1.0, 1.0, 0.0]))
        with pytest.raises(ValueError):
            Orientation.from_vector([0.0, 0.0, 0.0])


class TestConnectedGroup:
    def test_zero_time(self):
        assert connected_group_size(CouplingSet.from_hetero([1.0, 2.0]), 0.0) == 0
    
    def test_single_spin_half_turn(self):
        assert connected_group_size(CouplingSet.from_hetero([1.0]), np.pi / 2) == 1
    
    def test_curve(self, dimensionless_model):
        spec = EnsembleSpec(n_orientations=5, seed=3, geometry=dimensionless_model.subset(6))
        curve = connected_group_curve(spec, [0.0, 10.0, 20.0])
        assert list(curve.columns) == ['T', 'mean_size', 'stderr']
        assert curve['mean_size'].iloc[0] == 0
        assert np.all((curve['mean_size'] >= 0) & (curve['mean_size'] <= 6))


class TestGeometry:
    def test_model_geometry(self):
        geometry = model_geometry()
        assert geometry.n_env == 15
        assert geometry.central.label == "P"
        assert all(geometry.sites[i].label.startswith("H") for i in geometry.env_indices)
        assert len(geometry.digest) == 64
    
    def test_subset_keeps_nearest(self):
        geometry = model_geometry()
        subset = geometry.subset(6)
        assert subset.n_env == 6
        assert subset.digest == f"{geometry.digest}:n6"
        radii = np.linalg.norm(geometry.env_positions(), axis=1)
        kept = np.linalg.norm(subset.env_positions(), axis=1)
        assert np.max(kept) <= np.sort(radii)[5] + 1e-12
    
    def test_subset_too_large(self):
        with pytest.raises(GeometryError):
            model_geometry().subset(20)
    
    def test_parse(self):
        text = "# comment\nP 0 0 0\n\nH1 0 0 1.5\nH2 1.0 0 0\n"
        geometry = parse_geometry(text)
        assert geometry.n_env == 2
        assert [s.label for s in geometry.sites] == ["P", "H1", "H2"]
        assert geometry.digest == parse_geometry(text).digest
        assert geometry.digest != parse_geometry(text + "H3 0 2 0\n").digest
    
    def test_central_index(self):
        geometry = parse_geometry("H1 0 0 1\nP 0 0 0\n", central_index=1)
        assert geometry.central.label == "P"
        assert geometry.env_indices == [0]
    
    @pytest.mark.parametrize("text", ["P 0 0\nH 0 0 1\n", "P 0 0 0\nH a 0 1\n"])
    def test_bad_format(self, text):
        with pytest.raises(GeometryError):
            parse_geometry(text)
    
    def test_coincident_sites(self):
        with pytest.raises(GeometryError):
            parse_geometry("P 0 0 0\nH 0 0 0\n")
    
    def test_too_few_sites(self):
        with pytest.raises(GeometryError):
            parse_geometry("P 0 0 0\n")
    
    def test_load(self, tmp_path):
        path = tmp_path / "pair.xyz"
        path.write_text("P 0 0 0\nH 0 0 1\n", encoding="utf-8")
        assert load_geometry(str(path)).n_env == 1
        with pytest.raises(GeometryError):
            load_geometry(str(tmp_path / "missing.xyz"))
