"""Modulation-space norms, Fourier multipliers and growth experiments on Z_N."""

from ._modspace import (
    Error,
    Grid,
    Signal,
    Window,
    __version__,
    apply_multiplier,
    chirp_symbol,
    dft,
    frame_bounds,
    gaussian,
    gaussian_window,
    khintchine,
    lp_norm,
    mod_norm_blocks,
    mod_norm_gabor,
    mod_norm_stft,
    multiplier_norm_lp,
    noise,
    preset_names,
    run_experiment,
    sgn_symbol,
    stft,
)

__all__ = [
    "Error",
    "Grid",
    "Signal",
    "Window",
    "__version__",
    "apply_multiplier",
    "chirp_symbol",
    "dft",
    "frame_bounds",
    "gaussian",
    "gaussian_window",
    "khintchine",
    "lp_norm",
    "mod_norm_blocks",
    "mod_norm_gabor",
    "mod_norm_stft",
    "multiplier_norm_lp",
    "noise",
    "preset_names",
    "run_experiment",
    "sgn_symbol",
    "stft",
]
