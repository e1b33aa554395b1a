import numpy as np
import pytest

from sieveboot.companion import (
    CompanionSpec,
    ar_model_acvf,
    build_companion,
    companion_distribution,
    ma1_companion_spec,
    parametric_companion_spec,
    resampling_companion_spec,
)
from sieveboot.ar import InversionError, true_ar_coefficients_ma1
from sieveboot.dgp import InnovationSpec
from sieveboot.series import sample_acvf
from sieveboot.statistics import AcvfStatistic, MeanStatistic


class TestSpec:
    def test_unstable_coefficients_rejected(self):
        with pytest.raises(InversionError):
            parametric_companion_spec(np.array([1.5]), InnovationSpec())

    def test_unknown_source_rejected(self):
        with pytest.raises(ValueError):
            CompanionSpec(a=np.zeros(0), innovation_source="mystery", payload=None)

    def test_innovation_variance_parametric(self):
        spec = parametric_companion_spec(np.zeros(0), InnovationSpec(scale=2.0))
        assert spec.innovation_variance == 4.0

    def test_innovation_variance_record(self):
        spec = resampling_companion_spec(np.zeros(0), np.array([1.0, -1.0, 1.0, -1.0]))
        assert spec.innovation_variance == pytest.approx(1.0)


class TestModelAcvf:
    def test_ar1_closed_form(self):
        g = ar_model_acvf(np.array([0.5]), 1.0, 5)
        want = 0.5 ** np.arange(6) / 0.75
        assert np.allclose(g.gamma, want, rtol=1e-10)

    def test_white_noise(self):
        g = ar_model_acvf(np.zeros(0), 3.0, 2)
        assert np.allclose(g.gamma, [3.0, 0.0, 0.0])

    def test_ma1_companion_acvf_matches_original_process(self):
        # the companion process shares all second-order properties with the
        # noninvertible MA(1): gamma(0)=5, gamma(1)=-2, gamma(h>=2)=0
        g = ar_model_acvf(true_ar_coefficients_ma1(60), 4.0, 4)
        assert np.allclose(g.gamma, [5.0, -2.0, 0.0, 0.0, 0.0], atol=1e-10)


@pytest.fixture(scope="module")
def spec():
    return ma1_companion_spec(InnovationSpec("centered_exponential"), 200_000, seed=3)


class TestMa1Companion:
    def test_coefficients(self, spec):
        assert np.allclose(spec.a, true_ar_coefficients_ma1(60))

    def test_record_moments(self, spec):
        record = np.asarray(spec.payload)
        assert record.size == 200_000
        assert spec.innovation_variance == pytest.approx(4.0, rel=0.03)
        # exact kurtosis transfer: 0.4 * 9 - 1.2 = 2.4 excess
        excess = np.mean(record ** 4) / np.mean(record ** 2) ** 2 - 3.0
        assert excess == pytest.approx(2.4, abs=0.3)

    def test_path_second_order_structure(self, spec):
        x = build_companion(spec, 100_000, seed=4)
        g = sample_acvf(x, 2, centered=True)
        assert g.gamma[0] == pytest.approx(5.0, rel=0.05)
        assert g.gamma[1] == pytest.approx(-2.0, rel=0.1)
        assert abs(g.gamma[2]) < 0.15

    def test_build_deterministic(self, spec):
        x1 = build_companion(spec, 500, seed=5)
        x2 = build_companion(spec, 500, seed=5)
        assert np.array_equal(x1.values, x2.values)


class TestDistribution:
    def test_mean_statistic_centered_near_zero(self):
        spec = parametric_companion_spec(np.array([0.5]), InnovationSpec())
        res = companion_distribution(spec, MeanStatistic(), n=400, M=400, seed=6)
        assert res.theta_tilde == 0.0
        assert abs(res.law.mean()) < 0.3

    def test_acvf_center_is_model_value(self):
        spec = parametric_companion_spec(np.array([0.5]), InnovationSpec())
        res = companion_distribution(spec, AcvfStatistic(0), n=400, M=300, seed=7)
        assert res.theta_tilde == pytest.approx(1.0 / 0.75)

    def test_minimum_replications(self):
        spec = parametric_companion_spec(np.zeros(0), InnovationSpec())
        with pytest.raises(ValueError):
            companion_distribution(spec, MeanStatistic(), n=400, M=50, seed=8)
