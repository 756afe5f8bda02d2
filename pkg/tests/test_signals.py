import numpy as np
import pytest

from ltft.errors import InvalidParameterError
from ltft.signals import Signal, Spectrum, dft, idft, translate, modulate, dilate


def random_bandlimited(n, rate, band_frac=0.3, seed=0, real=True):
    """Random signal whose spectrum is confined to |f| <= band_frac * rate."""
    rng = np.random.default_rng(seed)
    s = Signal.centered(np.zeros(n), rate)
    freqs = dft(s).freqs
    bins = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * (
        np.abs(freqs) <= band_frac * rate
    )
    out = idft(Spectrum(bins, rate, s.origin))
    if real:
        out = Signal(out.samples.real, rate, out.origin)
    return out


class TestSignal:
    def test_centered_support(self):
        s = Signal.centered(np.ones(9), rate=4.0)
        assert s.t_start == pytest.approx(-1.0)
        assert s.t_end == pytest.approx(1.0)
        assert s.span == pytest.approx(2.0)

    def test_energy_weighting(self):
        s = Signal(np.ones(8), rate=2.0)
        assert s.energy() == pytest.approx(8 / 2.0)

    def test_rejects_bad_rate_and_empty(self):
        with pytest.raises(InvalidParameterError):
            Signal(np.ones(4), rate=0.0)
        with pytest.raises(InvalidParameterError):
            Signal(np.ones((2, 2)), rate=1.0)

    def test_pad_crop_roundtrip(self):
        s = Signal.centered(np.arange(5.0), rate=1.0)
        p = s.pad(2, 3)
        assert p.n == 10
        assert p.t_start == pytest.approx(s.t_start - 2)
        back = p.crop(2, 3)
        assert np.allclose(back.samples, s.samples)
        assert back.origin == pytest.approx(s.origin)


class TestDft:
    def test_dc_signal_single_bin(self):
        # Constant signal: all energy lands in the zero-frequency bin.
        s = Signal.centered(np.ones(9), rate=8.0)
        sp = dft(s)
        k0 = np.argmin(np.abs(sp.freqs))
        others = np.delete(np.abs(sp.bins), k0)
        assert np.abs(sp.bins[k0]) > 1e-12
        assert np.max(others) < 1e-12 * np.abs(sp.bins[k0])

    def test_pure_tone_single_bin(self):
        # Tone at an exact grid frequency hits exactly one bin.
        n, rate = 64, 64.0
        s0 = Signal.centered(np.zeros(n), rate)
        f_tone = 4 * rate / n
        s = Signal(np.exp(2j * np.pi * f_tone * s0.times), rate, s0.origin)
        sp = dft(s)
        k = np.argmax(np.abs(sp.bins))
        assert sp.freqs[k] == pytest.approx(f_tone)
        others = np.delete(np.abs(sp.bins), k)
        assert np.max(others) < 1e-10 * np.abs(sp.bins[k])

    def test_roundtrip(self):
        rng = np.random.default_rng(1)
        s = Signal.centered(rng.standard_normal(64) + 1j * rng.standard_normal(64), 32.0)
        back = idft(dft(s))
        err = np.linalg.norm(back.samples - s.samples) / np.linalg.norm(s.samples)
        assert err < 1e-12

    def test_plancherel(self):
        rng = np.random.default_rng(2)
        for n in (33, 64, 127):
            s = Signal.centered(rng.standard_normal(n) + 1j * rng.standard_normal(n), 17.0)
            assert dft(s).energy() == pytest.approx(s.energy(), rel=1e-10)

    def test_bin_spacing(self):
        s = Signal.centered(np.ones(16), rate=32.0)
        sp = dft(s)
        assert sp.bin_hz == pytest.approx(2.0)
        assert np.allclose(np.diff(sp.freqs), 2.0)


class TestUnitaryTransforms:
    def test_translate_grid_shift_delta(self):
        rate = 8.0
        x = np.zeros(16)
        x[0] = 1.0
        s = Signal(x, rate)
        out = translate(s, 3 / rate)
        assert out.samples[3] == pytest.approx(1.0)
        assert np.sum(np.abs(out.samples)) == pytest.approx(1.0)

    def test_modulate_constant_gives_tone(self):
        n, rate = 64, 64.0
        s = Signal.centered(np.ones(n), rate)
        out = modulate(s, rate / 4)
        sp = dft(out)
        k = np.argmax(np.abs(sp.bins))
        assert sp.freqs[k] == pytest.approx(rate / 4)

    @pytest.mark.parametrize("x", [0.3712, -1.77, 5 / 64])
    def test_translate_unitary_and_frequency_identity(self, x):
        s = random_bandlimited(128, 64.0, seed=3, real=False)
        out = translate(s, x)
        assert out.norm() == pytest.approx(s.norm(), rel=1e-10)
        # Time shift is a frequency-domain modulation by -x.
        lhs = dft(out).bins
        rhs = dft(s).bins * np.exp(-2j * np.pi * dft(s).freqs * x)
        assert np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs) < 1e-10

    def test_modulate_unitary_and_frequency_identity(self):
        n, rate = 128, 64.0
        s = random_bandlimited(n, rate, band_frac=0.2, seed=4, real=False)
        omega = 8.0  # grid frequency: 16 bins of rate/n
        out = modulate(s, omega)
        assert out.norm() == pytest.approx(s.norm(), rel=1e-12)
        # Modulation translates the spectrum.
        lhs = dft(out).bins
        rhs = np.roll(dft(s).bins, int(omega / dft(s).bin_hz))
        assert np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs) < 1e-10

    def test_dilate_rejects_zero(self):
        s = Signal.centered(np.ones(8), 8.0)
        with pytest.raises(InvalidParameterError):
            dilate(s, 0.0)

    def test_dilate_unitary_and_frequency_identity(self):
        # Smooth band-limited test signal with a closed-form transform:
        # s(t) = hann(t/2) exp(2 pi i f0 t), supported in |t| <= 1 strictly
        # inside the grid, so DFT bins approximate the continuous transform
        # to aliasing accuracy.
        from ltft.windows import hann_eval, hann_ft

        rate, f0 = 256.0, 4.0
        s0 = Signal.centered(np.zeros(1025), rate)
        t = s0.times
        s = Signal(hann_eval(t / 2.0) * np.exp(2j * np.pi * f0 * t), rate, s0.origin)
        out = dilate(s, 2.0)
        assert out.norm() == pytest.approx(s.norm(), rel=1e-10)
        # Frequency-domain dilation: ft_out(z) = sqrt(2) * ft_s(2 z), and
        # ft_s(z) = 2 hann_ft(2 (z - f0)).
        sp_out = dft(out)
        want = np.sqrt(2.0) * 2.0 * hann_ft(2.0 * (2.0 * sp_out.freqs - f0))
        err = np.linalg.norm(sp_out.bins - want) / np.linalg.norm(want)
        assert err < 1e-6

    def test_dilate_span_scales(self):
        s = Signal.centered(np.ones(65), 64.0)
        out = dilate(s, 2.0)
        assert out.span == pytest.approx(2.0 * s.span, rel=1e-9)
