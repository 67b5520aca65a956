import numpy as np
import pytest

from ddradar.ambiguity import (
    UNIMODULAR_THRESHOLD,
    AmbiguitySurface,
    coded_waveform,
    cross_ambiguity_array,
    cross_ambiguity_fft,
    cross_ambiguity_naive,
    cross_ambiguity_point,
    fast_cross_ambiguity,
    fast_pulsone_precompute,
    fast_pulsone_query,
    fast_pulsone_surface,
    moyal_residual,
    surface_from_csv,
    surface_to_csv,
    surface_to_pgm,
    unimodular_count,
    zc_sequence,
)
from ddradar.ddcore import PeriodicSequence
from ddradar.errors import BadRoot, ConfigurationError, EmptyChip
from ddradar.subgroups import chirp, pulsone
from ddradar.symplectic import SL2Element, gdaft_apply, lfm_apply
from conftest import rand_unit_seq


class TestNaive:
    def test_self_value_at_origin(self, mod15):
        rng = np.random.default_rng(0)
        x = rand_unit_seq(mod15, rng)
        surf = cross_ambiguity_naive(x, x, grid="full")
        assert surf.values[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_pulsone_bed_of_nails(self, mod15):
        v = pulsone(mod15, 0, 0)
        surf = cross_ambiguity_naive(v, v, grid="full").values
        for k in range(15):
            for l in range(15):
                if k % 3 == 0 and l % 5 == 0:
                    assert abs(abs(surf[k, l]) - 1) < 1e-12
                else:
                    assert abs(surf[k, l]) < 1e-12

    def test_chirp_line_support(self, mod15):
        alpha = 2
        v = chirp(mod15, alpha, 0, 0)
        surf = cross_ambiguity_naive(v, v, grid="full").values
        for k in range(15):
            for l in range(15):
                if l == (2 * alpha * k) % 15:
                    assert abs(abs(surf[k, l]) - 1) < 1e-12
                else:
                    assert abs(surf[k, l]) < 1e-12

    def test_point_matches_surface(self, mod15):
        rng = np.random.default_rng(1)
        x, y = rand_unit_seq(mod15, rng), rand_unit_seq(mod15, rng)
        surf = cross_ambiguity_naive(x, y, grid="full").values
        for k, l in [(0, 0), (3, 7), (14, 1), (8, 8)]:
            assert cross_ambiguity_point(x, y, k, l) == pytest.approx(surf[k, l], abs=1e-12)

    def test_fundamental_grid_is_restriction(self, mod15):
        rng = np.random.default_rng(2)
        x, y = rand_unit_seq(mod15, rng), rand_unit_seq(mod15, rng)
        full = cross_ambiguity_naive(x, y, grid="full").values
        fund = cross_ambiguity_naive(x, y, grid="fundamental").values
        np.testing.assert_allclose(fund, full[:3, :5], atol=1e-13)

    def test_workers_do_not_change_result(self, mod15):
        rng = np.random.default_rng(3)
        x, y = rand_unit_seq(mod15, rng), rand_unit_seq(mod15, rng)
        a = cross_ambiguity_naive(x, y, grid="full", workers=1).values
        b = cross_ambiguity_naive(x, y, grid="full", workers=4).values
        np.testing.assert_array_equal(a, b)

    def test_warns_on_non_unit_input(self, mod15):
        x = PeriodicSequence(mod15, 2.0 * np.ones(15, dtype=complex))
        with pytest.warns(RuntimeWarning):
            cross_ambiguity_naive(x, x, grid="fundamental")

    def test_fft_path_matches_naive(self, mod15):
        rng = np.random.default_rng(4)
        for _ in range(10):
            x, y = rand_unit_seq(mod15, rng), rand_unit_seq(mod15, rng)
            np.testing.assert_allclose(
                cross_ambiguity_fft(x, y).values,
                cross_ambiguity_naive(x, y, grid="full").values,
                atol=1e-12,
            )


class TestFastPulsone:
    def test_impulse_precompute_table(self, mod15):
        pre = fast_pulsone_precompute(PeriodicSequence.basis(mod15, 0), 0, 0)
        expected = np.zeros((3, 5), dtype=complex)
        expected[0, :] = 1 / np.sqrt(5)
        np.testing.assert_allclose(pre.rowfft, expected, atol=1e-15)

    def test_self_query_at_origin(self, mod15):
        v = pulsone(mod15, 1, 2)
        pre = fast_pulsone_precompute(v, 1, 2)
        assert fast_pulsone_query(pre, 0, 0) == pytest.approx(1.0, abs=1e-12)

    def test_matches_naive_everywhere_many_inputs(self, mod15):
        rng = np.random.default_rng(5)
        kk, ll = np.meshgrid(np.arange(15), np.arange(15), indexing="ij")
        for _ in range(50):
            x = rand_unit_seq(mod15, rng)
            k0, l0 = int(rng.integers(3)), int(rng.integers(5))
            y = pulsone(mod15, k0, l0)
            naive = cross_ambiguity_naive(x, y, grid="full").values
            pre = fast_pulsone_precompute(x, k0, l0)
            np.testing.assert_allclose(fast_pulsone_query(pre, kk, ll), naive, atol=1e-10)

    def test_surface_fundamental_only(self, mod15):
        rng = np.random.default_rng(6)
        x = rand_unit_seq(mod15, rng)
        pre = fast_pulsone_precompute(x, 0, 0)
        surf = fast_pulsone_surface(pre)
        assert surf.grid == "fundamental"
        naive = cross_ambiguity_naive(x, pulsone(mod15, 0, 0), grid="fundamental").values
        np.testing.assert_allclose(surf.values, naive, atol=1e-10)
        with pytest.raises(ConfigurationError):
            fast_pulsone_surface(pre, grid="full")

    def test_spot_checks_at_large_modulus(self, mod1147):
        rng = np.random.default_rng(7)
        x = rand_unit_seq(mod1147, rng)
        k0, l0 = 11, 23
        y = pulsone(mod1147, k0, l0)
        pre = fast_pulsone_precompute(x, k0, l0)
        for _ in range(100):
            k, l = int(rng.integers(mod1147.MN)), int(rng.integers(mod1147.MN))
            assert fast_pulsone_query(pre, k, l) == pytest.approx(
                cross_ambiguity_point(x, y, k, l), abs=1e-10
            )

    def test_transformed_reference_gdaft(self, mod15):
        rng = np.random.default_rng(8)
        x = rand_unit_seq(mod15, rng)
        g = SL2Element(mod15, 1, 2, 7, 0)
        ref = gdaft_apply(g, pulsone(mod15, 1, 2))
        fast = fast_cross_ambiguity(x, 1, 2, transform=("gdaft", g), grid="full").values
        naive = cross_ambiguity_naive(x, ref, grid="full").values
        np.testing.assert_allclose(fast, naive, atol=1e-10)

    def test_transformed_reference_lfm(self, mod15):
        rng = np.random.default_rng(9)
        x = rand_unit_seq(mod15, rng)
        ref = lfm_apply(2, pulsone(mod15, 0, 3))
        fast = fast_cross_ambiguity(x, 0, 3, transform=("lfm", 2), grid="full").values
        naive = cross_ambiguity_naive(x, ref, grid="full").values
        np.testing.assert_allclose(fast, naive, atol=1e-10)


class TestMoyal:
    def test_self_residual_small(self, mod15):
        rng = np.random.default_rng(10)
        for _ in range(100):
            x = rand_unit_seq(mod15, rng)
            assert moyal_residual(x, x) < 1e-10

    def test_cross_residual_orthogonal_pulsones(self, mod15):
        a, b = pulsone(mod15, 0, 0), pulsone(mod15, 1, 3)
        assert moyal_residual(a, b) < 1e-10

    def test_large_modulus(self, mod1147):
        rng = np.random.default_rng(11)
        for _ in range(10):
            x = rand_unit_seq(mod1147, rng)
            assert moyal_residual(x, x) < 1e-10

    def test_unimodular_count_bound(self, mod15):
        rng = np.random.default_rng(12)
        for _ in range(50):
            x = rand_unit_seq(mod15, rng)
            surf = cross_ambiguity_fft(x, x)
            assert unimodular_count(surf) <= 15

    def test_cauchy_schwarz_bound(self, mod15):
        rng = np.random.default_rng(13)
        for _ in range(20):
            x, y = rand_unit_seq(mod15, rng), rand_unit_seq(mod15, rng)
            assert float(np.max(np.abs(cross_ambiguity_fft(x, y).values))) <= 1 + 1e-9


class TestZadoffChu:
    def test_frozen_length_three(self):
        z = zc_sequence(1, 3)
        expected = np.array([1.0, np.exp(-2j * np.pi / 3), 1.0]) / np.sqrt(3)
        np.testing.assert_allclose(z, expected, atol=1e-15)

    def test_constant_amplitude(self):
        z = zc_sequence(2, 15)
        np.testing.assert_allclose(np.abs(z), 1 / np.sqrt(15), atol=1e-15)

    def test_zero_autocorrelation(self):
        for root in (1, 2, 4):
            z = zc_sequence(root, 15)
            surf = cross_ambiguity_array(z, z)
            for k in range(1, 15):
                assert abs(surf[k, 0]) < 1e-10

    def test_bad_parameters(self):
        with pytest.raises(BadRoot):
            zc_sequence(3, 15)
        with pytest.raises(BadRoot):
            zc_sequence(1, 8)


class TestCodedWaveform:
    def test_all_ones_identity_chip(self):
        y = coded_waveform(np.ones(15), np.ones(1))
        np.testing.assert_allclose(y, np.full(15, 1 / np.sqrt(15)), atol=1e-15)

    def test_zc_identity_chip_is_zc(self):
        z = zc_sequence(1, 15)
        np.testing.assert_allclose(coded_waveform(z, np.ones(1)), z, atol=1e-15)

    def test_oversampling_layout(self):
        z = np.array([1.0, 1j])
        y = coded_waveform(z, np.ones(3))
        assert y.shape == (6,)
        np.testing.assert_allclose(y[:3], y[0])
        np.testing.assert_allclose(y[3:], y[3])

    def test_empty_chip(self):
        with pytest.raises(EmptyChip):
            coded_waveform(np.ones(15), np.ones(0))


class TestSidelobeContrast:
    def test_chirp_eigenvector_vs_zc_coded(self, mod15):
        # eigenvector route: numerically zero off its support line
        alpha = 2
        v = chirp(mod15, alpha, 0, 0)
        surf = cross_ambiguity_naive(v, v, grid="full").values
        off = [
            abs(surf[k, l])
            for k in range(15)
            for l in range(15)
            if l != (2 * alpha * k) % 15
        ]
        chirp_db = 20 * np.log10(max(max(off), 1e-20))
        assert chirp_db < -180

        # coded route: rectangular chip correlations leave real sidelobes
        root, s = 1, 4
        w = coded_waveform(zc_sequence(root, 15), np.ones(s))
        wsurf = cross_ambiguity_array(w, w)
        L = 15 * s
        on_line = {
            (k, l)
            for k in range(0, L, s)
            for l in range(L)
            if l % 15 == (-root * (k // s)) % 15
        }
        zc_off = [abs(wsurf[k, l]) for k in range(L) for l in range(L) if (k, l) not in on_line]
        zc_db = 20 * np.log10(max(zc_off))
        assert zc_db > -40
        assert zc_db - chirp_db >= 60


class TestSurfaceIo:
    def test_csv_round_trip(self, mod15, tmp_path):
        rng = np.random.default_rng(14)
        x = rand_unit_seq(mod15, rng)
        surf = cross_ambiguity_naive(x, x, grid="fundamental")
        path = tmp_path / "surf.csv"
        surface_to_csv(surf, path)
        back = surface_from_csv(path, mod15, "fundamental")
        np.testing.assert_array_equal(back.values, surf.values)

    def test_pgm_format(self, mod15, tmp_path):
        surf = cross_ambiguity_naive(pulsone(mod15, 0, 0), pulsone(mod15, 0, 0), grid="full")
        path = tmp_path / "surf.pgm"
        surface_to_pgm(surf.values, path, scale="db", floor=-120.0)
        blob = path.read_bytes()
        assert blob.startswith(b"P5\n15 15\n255\n")
        pixels = np.frombuffer(blob.split(b"255\n", 1)[1], dtype=np.uint8).reshape(15, 15)
        assert pixels[0, 0] == 255  # mainlobe
        assert pixels[1, 1] == 0    # numerically-zero sidelobe clamps to the floor

    def test_pgm_linear_scale(self, tmp_path):
        values = np.array([[0.0, 0.5], [1.0, 0.25]])
        path = tmp_path / "lin.pgm"
        surface_to_pgm(values, path, scale="linear")
        pixels = np.frombuffer(path.read_bytes().split(b"255\n", 1)[1], dtype=np.uint8)
        assert list(pixels) == [0, 128, 255, 64]

    def test_pgm_rejects_bad_floor(self, tmp_path):
        with pytest.raises(ConfigurationError):
            surface_to_pgm(np.ones((2, 2)), tmp_path / "x.pgm", scale="db", floor=10.0)
