#!/usr/bin/env python3
"""Reference values for the audio DSP tests, printed for freezing into C++.

Each block prints expected values computed with numpy/scipy so the unit
tests assert against an independent implementation.
"""
import numpy as np
from scipy import signal

np.set_printoptions(precision=17)


def main() -> None:
    # DFT of a fixed 16-sample vector.
    x = np.array([0.0, 0.25, -0.5, 1.0, 0.75, -0.25, 0.5, -1.0,
                  0.125, 0.375, -0.625, 0.875, -0.125, 0.625, -0.375, 0.0625])
    spec = np.fft.fft(x)
    print("fft16 input:", list(x))
    for k in (0, 1, 5, 8, 15):
        print(f"fft16[{k}] = {spec[k].real:.17g} {spec[k].imag:+.17g}j")
    back = np.fft.ifft(spec)
    print("ifft max err:", np.max(np.abs(back - x)))

    # Periodic Hann window, N=8.
    hann = signal.get_window("hann", 8, fftbins=True)
    print("hann8:", " ".join(f"{v:.17g}" for v in hann))

    # Second-order Butterworth low-pass magnitude response: reference
    # attenuation for fc=1 kHz at fs=44.1 kHz, probed at fc and 10*fc.
    b, a = signal.butter(2, 1000, fs=44100)
    for f in (1000.0, 10000.0):
        w, h = signal.freqz(b, a, worN=[2 * np.pi * f / 44100])
        print(f"butter2 |H({f:g})| dB = {20 * np.log10(abs(h[0])):.6f}")

    # Peak frequency of a pure tone, measured the same way the C++ tests
    # measure it (rfft of the whole buffer, parabolic-free argmax).
    sr = 44100
    t = np.arange(sr * 2) / sr
    tone = 0.5 * np.sin(2 * np.pi * 440.0 * t)
    spec = np.abs(np.fft.rfft(tone))
    peak_bin = int(np.argmax(spec))
    print("tone peak Hz:", peak_bin * sr / len(tone))

    # Windowed-sinc downsample of that tone by 2: peak should land at 880.
    resampled = signal.resample_poly(tone, 1, 2)
    spec = np.abs(np.fft.rfft(resampled))
    peak = int(np.argmax(spec)) * sr / 2 / len(resampled) * 2
    print("speed 2.0 peak Hz (same clock):", peak)

    # Half-normal expected |x| for sigma=0.1 (random_noise image oracle and
    # the audio noise power sanity check share it).
    print("half-normal mean sigma=0.1:", 0.1 * np.sqrt(2 / np.pi))


if __name__ == "__main__":
    main()
