import numpy as np
import pytest
from scipy.integrate import quad

from ltft.atoms import (
    Band,
    ConstantTransition,
    CwtFamily,
    LTFTParams,
    LtftFamily,
    MotherWavelet,
    PhasePoint,
    StftFamily,
    SupportPinnedTransition,
    analysis_coeff,
    atom_band,
    atom_support,
    cwt_atom,
    default_mother_wavelet,
    eval_atom_ft,
    eval_ltft_atom,
    ltft_atom,
    ltft_coeff,
    normalized_hann,
    stft_atom,
)
from ltft.errors import InvalidParameterError
from ltft.signals import Signal, dft
from ltft.windows import hann_window

PARAMS_18 = LTFTParams(1.0, 2.0, ConstantTransition(1.0, 8.0))


def atom_on_grid(p, params, oversample=50.0, margin=0.25):
    """Discretize an atom on a grid that safely contains its support."""
    from ltft.atoms import atom_scale

    c = float(atom_scale(p.omega, p.tau, params))
    hw = p.tau / (2 * c)
    rate = oversample * (abs(p.omega) + c / p.tau)
    half = hw + margin
    n = int(np.ceil(2 * half * rate)) + 1
    t = p.x - half + np.arange(n) / rate
    return Signal(eval_ltft_atom(p, params, t), rate, p.x - half)


class TestBandsAndSupport:
    def test_band_split(self):
        assert atom_band(0.5, 1.0, PARAMS_18) is Band.LOW
        assert atom_band(4.0, 1.0, PARAMS_18) is Band.MID
        assert atom_band(10.0, 1.0, PARAMS_18) is Band.HIGH
        assert atom_band(-4.0, 1.0, PARAMS_18) is Band.MID

    def test_seams_belong_to_mid(self):
        assert atom_band(1.0, 1.5, PARAMS_18) is Band.MID
        assert atom_band(8.0, 1.5, PARAMS_18) is Band.MID

    def test_mid_support(self):
        lo, hi = atom_support(PhasePoint(0.0, 4.0, 2.0), PARAMS_18)
        assert (lo, hi) == pytest.approx((-0.25, 0.25))

    def test_high_support_length(self):
        lo, hi = atom_support(PhasePoint(0.0, 10.0, 1.0), PARAMS_18)
        assert hi - lo == pytest.approx(1.0 / 8.0)

    def test_support_pinned_transitions(self):
        tr = SupportPinnedTransition(j1=2.0, j2=0.5)
        params = LTFTParams(3.0, 8.0, tr)
        # a_tau = 2 tau / J1, so a low-band atom's support tau/a_tau = J1/2.
        lo, hi = atom_support(PhasePoint(0.0, 0.0, 5.0), params)
        assert hi - lo == pytest.approx(2.0 / 2.0)
        assert tr.a_tau(5.0) == pytest.approx(5.0)
        assert tr.b_tau(5.0) == pytest.approx(20.0)

    def test_invalid_parameters(self):
        with pytest.raises(InvalidParameterError):
            ConstantTransition(3.0, 2.0)
        with pytest.raises(InvalidParameterError):
            SupportPinnedTransition(1.0, 2.0)
        with pytest.raises(InvalidParameterError):
            LTFTParams(0.0, 2.0, ConstantTransition(1.0, 2.0))


class TestAtomEvaluation:
    def test_mid_band_peak(self):
        # scale c = omega = 4, tau = 2: value sqrt(4/2) h(0) = sqrt(2).
        v = eval_ltft_atom(PhasePoint(0.0, 4.0, 2.0), PARAMS_18, 0.0)
        assert v == pytest.approx(np.sqrt(2.0))

    def test_outside_support_is_zero(self):
        v = eval_ltft_atom(PhasePoint(0.0, 4.0, 2.0), PARAMS_18, 0.3)
        assert v == 0.0

    def test_low_band_peak(self):
        v = eval_ltft_atom(PhasePoint(0.0, 0.0, 1.0), PARAMS_18, 0.0)
        assert v == pytest.approx(1.0)

    def test_continuous_across_seams(self):
        for omega0 in (1.0, 8.0):
            for tau in (1.0, 1.7):
                t = np.linspace(-0.2, 0.2, 41)
                below = eval_ltft_atom(PhasePoint(0.0, omega0 - 1e-9, tau), PARAMS_18, t)
                at = eval_ltft_atom(PhasePoint(0.0, omega0, tau), PARAMS_18, t)
                assert np.allclose(below, at, atol=1e-6)

    def test_unit_norm_matches_window_norm(self):
        # ||atom||_2 = ||h||_2 for every phase point (unitarity of the
        # elementary transforms); checked by quadrature.
        rng = np.random.default_rng(7)
        want = hann_window().l2norm()
        for _ in range(6):
            p = PhasePoint(rng.uniform(-1, 1), rng.uniform(-12, 12), rng.uniform(1, 2))
            s = atom_on_grid(p, PARAMS_18)
            assert s.norm() == pytest.approx(want, rel=1e-4)

    def test_tau_outside_range_rejected(self):
        with pytest.raises(InvalidParameterError):
            eval_ltft_atom(PhasePoint(0.0, 1.0, 5.0), PARAMS_18, 0.0)


class TestAtomTransform:
    def test_peak_value_at_carrier(self):
        # fthat(omega) = sqrt(tau/c) hannft(0) = sqrt(tau/c) / 2.
        v = eval_atom_ft(PhasePoint(0.0, 4.0, 2.0), PARAMS_18, 4.0)
        assert v == pytest.approx(np.sqrt(2.0 / 4.0) * 0.5)

    def test_translation_only_adds_phase(self):
        z = np.linspace(-10, 10, 101)
        a = eval_atom_ft(PhasePoint(0.0, 4.0, 2.0), PARAMS_18, z)
        b = eval_atom_ft(PhasePoint(0.77, 4.0, 2.0), PARAMS_18, z)
        assert np.allclose(np.abs(a), np.abs(b))
        assert np.allclose(b, a * np.exp(-2j * np.pi * 0.77 * z))

    def test_mid_band_offset_value(self):
        # omega=4, tau=2, z=6: sqrt(2/4) hann_ft(1) = (1/sqrt(2)) (1/4).
        v = eval_atom_ft(PhasePoint(0.0, 4.0, 2.0), PARAMS_18, 6.0)
        assert v == pytest.approx(0.25 / np.sqrt(2.0))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_dft_of_discretized_atom(self, seed):
        rng = np.random.default_rng(seed)
        p = PhasePoint(rng.uniform(-0.5, 0.5), rng.uniform(0.3, 12.0), rng.uniform(1, 2))
        s = atom_on_grid(p, PARAMS_18)
        sp = dft(s)
        want = eval_atom_ft(p, PARAMS_18, sp.freqs)
        err = np.linalg.norm(sp.bins - want) / np.linalg.norm(want)
        assert err < 1e-3


class TestAnalysisCoeff:
    def test_zero_signal(self):
        s = Signal.centered(np.zeros(64), 64.0)
        assert ltft_coeff(s, PhasePoint(0.0, 4.0, 2.0), PARAMS_18) == 0.0

    def test_disjoint_support_exact_zero(self):
        s = Signal.centered(np.ones(64), 64.0)
        assert ltft_coeff(s, PhasePoint(10.0, 4.0, 2.0), PARAMS_18) == 0.0

    def test_self_inner_product(self):
        # <atom, atom> = 3/8 (the squared window norm) for any phase point.
        for p in (PhasePoint(0.1, 4.0, 2.0), PhasePoint(-0.3, 0.2, 1.0), PhasePoint(0.0, 11.0, 1.5)):
            s = atom_on_grid(p, PARAMS_18)
            got = ltft_coeff(s, p, PARAMS_18)
            assert got.imag == pytest.approx(0.0, abs=1e-6)
            assert got.real == pytest.approx(3.0 / 8.0, rel=1e-3)

    def test_far_tone_leaks_little(self):
        p = PhasePoint(0.0, 4.0, 2.0)
        c_over_tau = 4.0 / 2.0
        f_far = p.omega + 10.0 * c_over_tau
        rate = 400.0
        base = Signal.centered(np.zeros(1601), rate)
        s = Signal(np.exp(2j * np.pi * f_far * base.times), rate, base.origin)
        coeff = abs(ltft_coeff(s, p, PARAMS_18))
        bound = 1e-2 * s.norm() * np.sqrt(3.0 / 8.0)
        assert coeff < bound


class TestOtherFamilies:
    def test_stft_atom_at_origin_is_window(self):
        w = hann_window()
        a = stft_atom(PhasePoint(0.0, 0.0), w)
        t = np.linspace(-0.6, 0.6, 101)
        assert np.allclose(a.eval(t), w.eval(t))

    def test_stft_normalized_window_unit_norm(self):
        w = normalized_hann()
        a = stft_atom(PhasePoint(0.3, 5.0), w)
        rate = 512.0
        base = Signal.centered(np.zeros(2049), rate)
        vals = a.eval(base.times)
        assert np.sqrt(np.sum(np.abs(vals) ** 2) / rate) == pytest.approx(1.0, rel=1e-4)

    def test_cwt_atom_norm_preserved(self):
        mother = default_mother_wavelet()
        for omega in (0.5, 3.0, -2.0):
            a = cwt_atom(PhasePoint(0.0, omega), mother)
            rate = 256.0 * max(1.0, abs(omega))
            n = int(np.ceil(1.2 * rate / abs(omega))) | 1
            base = Signal.centered(np.zeros(n), rate)
            vals = a.eval(base.times)
            norm = np.sqrt(np.sum(np.abs(vals) ** 2) / rate)
            assert norm == pytest.approx(mother.l2norm, rel=1e-3)

    def test_cwt_rejects_zero_frequency(self):
        with pytest.raises(InvalidParameterError):
            cwt_atom(PhasePoint(0.0, 0.0), default_mother_wavelet())


class TestMotherWavelet:
    def test_dc_free(self):
        mother = default_mother_wavelet()
        re, _ = quad(lambda t: mother.eval(t).real, -0.5, 0.5, limit=200)
        im, _ = quad(lambda t: mother.eval(t).imag, -0.5, 0.5, limit=200)
        assert abs(re + 1j * im) < 1e-8

    def test_admissibility_normalized(self):
        mother = default_mother_wavelet()

        def integrand(z):
            return float(np.abs(mother.ft(z)) ** 2 / z)

        total = 0.0
        for a, b in ((1e-10, 1.0), (1.0, 16.0), (16.0, 400.0)):
            v, _ = quad(integrand, a, b, limit=400)
            total += v
        assert total == pytest.approx(1.0, rel=1e-6)

    def test_ft_matches_time_quadrature(self):
        mother = default_mother_wavelet()
        for z in (0.7, 2.0, 3.3):
            re, _ = quad(lambda t: (mother.eval(t) * np.exp(-2j * np.pi * z * t)).real, -0.5, 0.5, limit=200)
            im, _ = quad(lambda t: (mother.eval(t) * np.exp(-2j * np.pi * z * t)).imag, -0.5, 0.5, limit=200)
            assert re + 1j * im == pytest.approx(complex(mother.ft(z)), abs=1e-9)


class TestFamilies:
    def test_ltft_family_kernel_matches_atom(self):
        fam = LtftFamily(PARAMS_18)
        t = np.linspace(-0.3, 0.3, 61)
        assert np.allclose(
            fam.kernel(4.0, 2.0, t), eval_ltft_atom(PhasePoint(0.0, 4.0, 2.0), PARAMS_18, t)
        )
        assert fam.halfwidth(4.0, 2.0) == pytest.approx(0.25)

    def test_ft_abs2_consistency(self):
        fam = LtftFamily(PARAMS_18)
        z = np.linspace(-12, 12, 97)
        want = np.abs(eval_atom_ft(PhasePoint(0.0, 4.0, 2.0), PARAMS_18, z)) ** 2
        assert np.allclose(fam.ft_abs2(4.0, 2.0, z), want)

    def test_stft_cwt_family_halfwidths(self):
        assert StftFamily(hann_window()).halfwidth(3.0) == 0.5
        fam = CwtFamily(default_mother_wavelet())
        assert fam.halfwidth(4.0) == pytest.approx(0.125)
