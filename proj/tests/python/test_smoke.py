"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import fracsr


def test_gl_coefficients_known_values():
    taps = fracsr.gl_coefficients(0.5, 3)
    np.testing.assert_allclose(taps, [1.0, -0.5, -0.125, -0.0625], rtol=1e-12)
    np.testing.assert_allclose(fracsr.gl_coefficients(1.0, 2), [1.0, -1.0, 0.0])


def test_gl_coefficients_rejects_bad_alpha():
    with pytest.raises(ValueError):
        fracsr.gl_coefficients(1.5, 4)


def test_frac_derivative_1d():
    out = fracsr.frac_derivative_1d(np.array([0.0, 0.0, 1.0, 0.0, 0.0]), 0.5, 2)
    np.testing.assert_allclose(out, [0.0, 0.0, 1.0, -0.5, -0.125], rtol=1e-12)


def _test_image(h=24, w=24, seed=5):
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:h, 0:w]
    img = 0.4 + 0.3 * np.sin(0.3 * x) * np.cos(0.2 * y) + 0.05 * rng.standard_normal((h, w))
    return np.clip(img, 0.0, 1.0)


def test_upscale_shapes_and_determinism():
    img = _test_image()
    out1 = fracsr.upscale(img, 2, alpha=1.0, max_iters=5)
    out2 = fracsr.upscale(img, 2, alpha=1.0, max_iters=5)
    assert out1.shape == (48, 48)
    np.testing.assert_array_equal(out1, out2)


def test_upscale_color():
    img = np.stack([_test_image(seed=k) for k in range(3)], axis=-1)
    out = fracsr.upscale(img, 2, alpha=1.0, max_iters=3)
    assert out.shape == (48, 48, 3)


def test_upscale_rejects_bad_scale():
    with pytest.raises(ValueError):
        fracsr.upscale(_test_image(), 3)


def test_optimize_alpha_trace():
    res = fracsr.optimize_alpha(_test_image(), grid=[0.5, 1.0])
    assert res["alpha_star"] in (0.5, 1.0)
    assert len(res["trace"]) == 2
    assert res["criterion"] <= min(j for _, j in res["trace"]) + 1e-12


def test_metrics_identities():
    img = _test_image()
    assert fracsr.rmse(img, img) == 0.0
    assert fracsr.ssim(img, img) == pytest.approx(1.0, abs=1e-9)
    assert fracsr.texture_similarity(img, img) == 0.0
    feats = fracsr.glcm_features(np.full((8, 8), 0.5))
    assert feats["energy"] == pytest.approx(1.0)
    assert feats["entropy"] == pytest.approx(0.0)


def test_bicubic_shape():
    out = fracsr.bicubic_resize(_test_image(12, 10), 4)
    assert out.shape == (48, 40)
