import math

import numpy as np
import pytest

from spreadloc.distributions import ErrorModel, density, folded_density, sample
from spreadloc.quadrature import integrate
from spreadloc.transform import TABLE_MODELS

MODELS = list(TABLE_MODELS.values()) + [ErrorModel.gaussian(2.5), ErrorModel.student_t(3.5, 0.3)]


def test_mode_values():
    assert density(ErrorModel.gaussian(), 0) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-15)
    assert density(ErrorModel.laplace(), 0) == pytest.approx(0.5, abs=1e-15)
    # 0.95 phi(0) + 0.05 phi(0) / 3, by hand
    assert density(ErrorModel.contaminated_normal(0.05, 3), 0) == pytest.approx(0.3856442, abs=1e-7)


def test_folded_values():
    assert folded_density(ErrorModel.gaussian(), 0) == pytest.approx(0.7978846, abs=1e-7)
    assert folded_density(ErrorModel.laplace(), 1) == pytest.approx(math.exp(-1), abs=1e-15)


def test_t_density_matches_closed_form_at_df5():
    # f(0) = Gamma(3) / (sqrt(5 pi) Gamma(5/2)) = 8 / (3 pi sqrt 5)
    assert density(ErrorModel.student_t(5), 0) == pytest.approx(8 / (3 * math.pi * math.sqrt(5)), rel=1e-13)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.label)
def test_symmetry_and_folding(model):
    e = np.linspace(0, 8, 100)
    assert np.all(density(model, e) >= 0)
    np.testing.assert_allclose(density(model, e), density(model, -e), atol=1e-12, rtol=0)
    np.testing.assert_allclose(folded_density(model, e), 2 * density(model, e), atol=1e-12, rtol=0)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.label)
def test_normalization(model):
    whole = integrate(lambda e: density(model, e), -math.inf, math.inf)
    folded = integrate(lambda a: folded_density(model, a), 0, math.inf)
    assert abs(whole.value - 1) < 1e-8
    assert abs(folded.value - 1) < 1e-8


@pytest.mark.parametrize("kwargs", [
    dict(kind="student_t", df=3),
    dict(kind="student_t", df=2.5),
    dict(kind="student_t"),
    dict(kind="gaussian", scale=0),
    dict(kind="laplace", scale=-1),
    dict(kind="contaminated_normal", contamination_fraction=0),
    dict(kind="contaminated_normal", contamination_fraction=1),
    dict(kind="contaminated_normal", scale_inflation=1),
    dict(kind="cauchy"),
    dict(kind="gaussian", df=5),
])
def test_invalid_parameters_rejected_at_construction(kwargs):
    with pytest.raises(ValueError):
        ErrorModel(**kwargs)


def test_negative_fold_argument():
    with pytest.raises(ValueError):
        folded_density(ErrorModel.gaussian(), -0.1)


def test_sampler_scale():
    rng = np.random.default_rng(3)
    draws = sample(ErrorModel.contaminated_normal(scale=2.0), 200_000, rng)
    # variance of the mixture: s^2 (1 - eps + eps k^2) = 4 * 1.4
    assert np.var(draws) == pytest.approx(5.6, rel=0.03)
