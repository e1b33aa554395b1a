"""Statistics shared by the bootstrap engine, the companion oracle and the
Monte Carlo truth runs.

Each statistic knows three things: how to evaluate itself on a path, the exact
centering value implied by an autoregressive model (coefficients a, innovation
variance sigma2) -- used for bootstrap and companion laws -- and its scaling
rate c_n. Frequency-domain centers are computed with the same Fourier-grid
quadrature as the statistic itself, so discretization cancels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dgp
from .ar import ARFit
from .companion import ar_model_acvf
from .series import (
    ACVF,
    Series,
    StatisticDescriptor,
    generalized_mean_statistic,
    sample_acf,
    sample_acvf,
    sample_mean,
)
from .spectral import (
    KernelSpec,
    WeightFunction,
    ar_spectral_density,
    cosine_weight,
    fourier_quadrature,
    kernel_spectral_estimate,
    linear_process_spectral_density,
)

__all__ = [
    "Statistic",
    "MeanStatistic",
    "AcvfStatistic",
    "AcfStatistic",
    "IntegratedPeriodogramStatistic",
    "RatioStatistic",
    "SpectralDensityStatistic",
    "GeneralizedMeanStatistic",
    "statistic_from_config",
    "theoretical_acvf",
    "theoretical_spectral_density",
    "true_center",
]


class Statistic:
    """Protocol base; subclasses set ``name`` and override the three hooks."""

    name: str = ""

    def rate(self, n: int) -> float:
        return math.sqrt(n)

    def evaluate(self, s: Series) -> float:
        raise NotImplementedError

    def model_center(self, a, sigma2: float, n: int):
        """Exact statistic value for the AR model (a, sigma2), or None if the
        engine must estimate it by auxiliary simulation."""
        raise NotImplementedError


@dataclass
class MeanStatistic(Statistic):
    name: str = "mean"

    def evaluate(self, s: Series) -> float:
        return sample_mean(s)

    def model_center(self, a, sigma2, n):
        return 0.0


@dataclass
class AcvfStatistic(Statistic):
    """Centered sample autocovariance at a fixed lag."""

    h: int = 0

    def __post_init__(self):
        self.name = f"acvf-lag-{self.h}"

    def evaluate(self, s: Series) -> float:
        return sample_acvf(s, self.h, centered=True)[self.h]

    def model_center(self, a, sigma2, n):
        return ar_model_acvf(a, sigma2, self.h)[self.h]


@dataclass
class AcfStatistic(Statistic):
    """Sample autocorrelation at a fixed lag."""

    h: int = 1

    def __post_init__(self):
        if self.h < 1:
            raise ValueError("acf statistic requires h >= 1")
        self.name = f"acf-lag-{self.h}"

    def evaluate(self, s: Series) -> float:
        return float(sample_acf(s, self.h)[self.h])

    def model_center(self, a, sigma2, n):
        gamma = ar_model_acvf(a, sigma2, self.h)
        return gamma[self.h] / gamma[0]


def _grid_functional(f_vals: np.ndarray, phi: WeightFunction, freqs: np.ndarray, w: np.ndarray) -> float:
    return float(np.dot(w * phi(freqs), f_vals))


@dataclass
class IntegratedPeriodogramStatistic(Statistic):
    """M(I_n, phi) on the Fourier-frequency quadrature grid."""

    phi: WeightFunction = None

    def __post_init__(self):
        self.name = f"intper[{self.phi.name}]"

    def evaluate(self, s: Series) -> float:
        from .spectral import integrated_periodogram

        return integrated_periodogram(s, self.phi)

    def model_center(self, a, sigma2, n):
        freqs, w = fourier_quadrature(n)
        fit = ARFit(p=len(np.atleast_1d(a)), a=np.atleast_1d(a), sigma2=sigma2, source="theoretical")
        return _grid_functional(ar_spectral_density(fit, freqs), self.phi, freqs, w)


@dataclass
class RatioStatistic(Statistic):
    """R(I_n, phi) = M(I_n, phi) / M(I_n, 1)."""

    phi: WeightFunction = None

    def __post_init__(self):
        self.name = f"ratio[{self.phi.name}]"

    def evaluate(self, s: Series) -> float:
        from .spectral import ratio_statistic

        return ratio_statistic(s, self.phi)

    def model_center(self, a, sigma2, n):
        freqs, w = fourier_quadrature(n)
        fit = ARFit(p=len(np.atleast_1d(a)), a=np.atleast_1d(a), sigma2=sigma2, source="theoretical")
        fv = ar_spectral_density(fit, freqs)
        return _grid_functional(fv, self.phi, freqs, w) / float(np.dot(w, fv))


@dataclass
class SpectralDensityStatistic(Statistic):
    """Kernel spectral density estimate at a fixed frequency; rate sqrt(n h)."""

    lam: float = math.pi / 2
    kernel: KernelSpec = None

    def __post_init__(self):
        if self.kernel is None:
            self.kernel = KernelSpec()
        self.name = f"specdens[{self.lam:.4f},h={self.kernel.bandwidth}]"

    def rate(self, n: int) -> float:
        return math.sqrt(n * self.kernel.bandwidth)

    def evaluate(self, s: Series) -> float:
        return kernel_spectral_estimate(s, self.kernel, self.lam)

    def model_center(self, a, sigma2, n):
        fit = ARFit(p=len(np.atleast_1d(a)), a=np.atleast_1d(a), sigma2=sigma2, source="theoretical")
        return ar_spectral_density(fit, self.lam)


@dataclass
class GeneralizedMeanStatistic(Statistic):
    """Wrapper for an arbitrary generalized-mean descriptor.

    No closed-form model center exists in general; returning None makes the
    engines fall back to auxiliary long-path simulation.
    """

    descriptor: StatisticDescriptor = None

    def __post_init__(self):
        self.name = self.descriptor.name

    def evaluate(self, s: Series) -> float:
        return generalized_mean_statistic(s, self.descriptor)

    def model_center(self, a, sigma2, n):
        return None


def statistic_from_config(cfg) -> Statistic:
    """Build a statistic from a config mapping {name, lag?, lambda?, bandwidth?}."""
    if isinstance(cfg, Statistic):
        return cfg
    if isinstance(cfg, StatisticDescriptor):
        return GeneralizedMeanStatistic(descriptor=cfg)
    cfg = dict(cfg)
    name = cfg.pop("name")
    if name == "mean":
        stat = MeanStatistic()
    elif name == "acvf":
        stat = AcvfStatistic(h=int(cfg.pop("lag", 0)))
    elif name == "acf":
        stat = AcfStatistic(h=int(cfg.pop("lag", 1)))
    elif name == "ratio-cos":
        stat = RatioStatistic(phi=cosine_weight(int(cfg.pop("lag", 1))))
    elif name == "intper-cos":
        stat = IntegratedPeriodogramStatistic(phi=cosine_weight(int(cfg.pop("lag", 1))))
    elif name == "specdens":
        lam = float(cfg.pop("lambda", math.pi / 2))
        bandwidth = float(cfg.pop("bandwidth", 0.3))
        stat = SpectralDensityStatistic(lam=lam, kernel=KernelSpec(bandwidth=bandwidth))
    else:
        raise ValueError(f"unknown statistic {name!r}")
    if cfg:
        raise ValueError(f"unknown statistic keys: {sorted(cfg)}")
    return stat


def theoretical_acvf(model, maxlag: int) -> ACVF:
    """Exact autocovariances of a DGP model."""
    if isinstance(model, dgp.LinearModel):
        b = np.concatenate([[1.0], np.asarray(model.b, dtype=float)])
        sigma2 = model.innovations.scale ** 2
        gamma = np.array([
            sigma2 * np.dot(b[: b.size - h], b[h:]) if h < b.size else 0.0
            for h in range(maxlag + 1)
        ])
        return ACVF(gamma=gamma, kind="theoretical")
    if isinstance(model, dgp.ARModel):
        return ar_model_acvf(np.asarray(model.a), model.innovations.scale ** 2, maxlag)
    if isinstance(model, dgp.Arch1Model):
        gamma = np.zeros(maxlag + 1)
        gamma[0] = model.omega / (1.0 - model.alpha1)
        return ACVF(gamma=gamma, kind="theoretical")
    raise TypeError(f"unsupported model type {type(model).__name__}")


def theoretical_spectral_density(model):
    """Exact spectral density of a DGP model, as a callable of frequency."""
    if isinstance(model, dgp.LinearModel):
        b = np.asarray(model.b, dtype=float)
        sigma2 = model.innovations.scale ** 2
        return lambda lam: linear_process_spectral_density(b, sigma2, lam)
    if isinstance(model, dgp.ARModel):
        fit = ARFit(p=model.p, a=np.asarray(model.a), sigma2=model.innovations.scale ** 2,
                    source="theoretical")
        return lambda lam: ar_spectral_density(fit, lam)
    if isinstance(model, dgp.Arch1Model):
        level = model.omega / (1.0 - model.alpha1) / (2.0 * np.pi)
        return lambda lam: np.full_like(np.asarray(lam, dtype=float), level) if np.ndim(lam) else level
    raise TypeError(f"unsupported model type {type(model).__name__}")


def true_center(statistic: Statistic, model, n: int) -> float:
    """Exact population value of the statistic under the true DGP."""
    if isinstance(statistic, MeanStatistic):
        return 0.0
    if isinstance(statistic, AcvfStatistic):
        return theoretical_acvf(model, statistic.h)[statistic.h]
    if isinstance(statistic, AcfStatistic):
        gamma = theoretical_acvf(model, statistic.h)
        return gamma[statistic.h] / gamma[0]
    freqs, w = fourier_quadrature(n)
    f = theoretical_spectral_density(model)
    fv = np.asarray(f(freqs), dtype=float)
    if isinstance(statistic, IntegratedPeriodogramStatistic):
        return _grid_functional(fv, statistic.phi, freqs, w)
    if isinstance(statistic, RatioStatistic):
        return _grid_functional(fv, statistic.phi, freqs, w) / float(np.dot(w, fv))
    if isinstance(statistic, SpectralDensityStatistic):
        return float(f(statistic.lam))
    raise TypeError(f"no analytic center for {statistic.name}")
