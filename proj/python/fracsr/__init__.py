"""Single-image super-resolution via fractional-order gradient interpolation."""

from ._fracsr import (
    __version__,
    bicubic_resize,
    frac_derivative_1d,
    gl_coefficients,
    glcm_features,
    optimize_alpha,
    rmse,
    ssim,
    texture_similarity,
    upscale,
)

__all__ = [
    "__version__",
    "bicubic_resize",
    "frac_derivative_1d",
    "gl_coefficients",
    "glcm_features",
    "optimize_alpha",
    "rmse",
    "ssim",
    "texture_similarity",
    "upscale",
]
