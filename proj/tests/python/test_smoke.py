import math

import numpy as np
import pytest

import modspace as ms


def test_grid_and_signal_roundtrip():
    g = ms.Grid(64, 0.125)
    assert g.n == 64 and g.band == (-4.0, 4.0)
    f = ms.noise(g, 3)
    back = ms.Signal.from_json(f.to_json())
    assert np.array_equal(back.samples, f.samples)


def test_dft_matches_numpy():
    g = ms.Grid(48, 0.5)
    f = ms.noise(g, 5)
    assert np.allclose(ms.dft(f), np.fft.fft(f.samples), atol=1e-12)


def test_stft_l2_identity():
    g = ms.Grid(64, 0.125)
    f = ms.noise(g, 7)
    w = ms.gaussian_window(g)
    v = ms.stft(f, w)
    assert v.shape == (64, 64)
    expect = math.sqrt(64) * np.linalg.norm(f.samples) * w.l2_norm
    assert ms.mod_norm_stft(f, w, 2, 2) == pytest.approx(expect, rel=1e-12)
    assert np.sqrt((np.abs(v) ** 2).sum()) == pytest.approx(expect, rel=1e-12)


def test_norm_definitions_are_finite_and_positive():
    g = ms.Grid(128, 0.125)
    f = ms.noise(g, 11, band=32)
    for p, q in [(1, 1), (2, "inf"), (4, 2)]:
        norms = [
            ms.mod_norm_stft(f, ms.gaussian_window(g), p, q, "continuum"),
            ms.mod_norm_blocks(f, p, q, "continuum"),
            ms.mod_norm_gabor(f, 8, 8, p, q, "continuum"),
        ]
        assert all(n > 0 and math.isfinite(n) for n in norms)


def test_multiplier_and_probe():
    g = ms.Grid(128, 0.125)
    sgn = ms.sgn_symbol(g)
    t = np.arange(128)
    f = ms.Signal(g, np.cos(2 * np.pi * 5 * t / 128))
    out = ms.apply_multiplier(sgn, f)
    assert np.allclose(out.samples, 1j * np.sin(2 * np.pi * 5 * t / 128), atol=1e-13)
    value, witness = ms.multiplier_norm_lp(np.ones(128), g, 4, budget=4)
    assert value == pytest.approx(1.0, abs=1e-14)
    assert witness.startswith("probe=")


def test_khintchine_exact_p2():
    b = [1.0, 2j, -0.5]
    assert ms.khintchine(b, 2) == pytest.approx(math.sqrt(1 + 4 + 0.25), rel=1e-14)


def test_errors_carry_codes():
    g = ms.Grid(16, 0.25)
    with pytest.raises(ms.Error) as info:
        ms.mod_norm_gabor(ms.noise(g, 1), 4, 16, 2, 2)
    assert info.value.code == "NotAFrame"
    with pytest.raises(ms.Error):
        ms.Grid(1, 1.0)


def test_preset_is_deterministic():
    assert "stft-identities" in ms.preset_names()
    a = ms.run_experiment("stft-identities", 4, budget=5)
    b = ms.run_experiment("stft-identities", 4, budget=5)
    assert a["passed"]
    assert a["manifest"] == b["manifest"]
    assert a["artifacts"] == b["artifacts"]
