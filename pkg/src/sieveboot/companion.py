"""The companion autoregressive process: the AR(infinity) process driven by
i.i.d. copies of the Wold innovations, sharing all second-order properties
with the original process. The sieve bootstrap mimics statistics of this
process, which is why it is the natural oracle for validity checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.signal import lfilter

from . import dgp
from .ar import InversionError, invert_ar_polynomial, min_modulus_on_disk, true_ar_coefficients_ma1
from .series import ACVF, EmpiricalLaw, Series, ecdf

__all__ = [
    "CompanionSpec",
    "OracleResult",
    "ar_model_acvf",
    "build_companion",
    "companion_distribution",
    "ma1_companion_spec",
    "resampling_companion_spec",
    "parametric_companion_spec",
]

_SOURCES = ("exact_ma1_filter", "residual_resample", "parametric")


@dataclass(frozen=True)
class CompanionSpec:
    """Truncated AR(infinity) coefficients plus an i.i.d. innovation source.

    For the resampling sources the payload is a long record whose values are
    drawn i.i.d. with replacement; for the parametric source it is an
    InnovationSpec.
    """

    a: np.ndarray
    innovation_source: str
    payload: object

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if self.innovation_source not in _SOURCES:
            raise ValueError(f"unknown innovation source {self.innovation_source!r}")
        if a.size and min_modulus_on_disk(a, 1.0) <= 0:
            raise InversionError("companion AR polynomial has a root in the closed unit disk")
        object.__setattr__(self, "a", a)

    @property
    def innovation_variance(self) -> float:
        if self.innovation_source == "parametric":
            return float(self.payload.scale ** 2)
        record = np.asarray(self.payload, dtype=float)
        return float(np.mean(record ** 2) - np.mean(record) ** 2)


@dataclass(frozen=True)
class OracleResult:
    """Monte Carlo law of the scaled statistic on companion paths."""

    law: EmpiricalLaw
    M: int
    theta_tilde: float
    statistic: str


def ma1_companion_spec(
    innovations: Optional[dgp.InnovationSpec] = None,
    record_length: int = 10 ** 6,
    seed: dgp.SeedLike = 0,
    L: int = dgp.VE_FILTER_LAG,
) -> CompanionSpec:
    """Companion spec for the noninvertible MA(1) example.

    Draws a long record of exact Wold innovations (fresh e filtered to ve) and
    resamples i.i.d. from it. Consecutive ve values are uncorrelated but not
    independent, so resampling -- not the filtered path itself -- realizes the
    i.i.d. requirement of the companion recursion.
    """
    _, _, ve = dgp.ma1_example(record_length + dgp.VE_FILTER_LAG, seed, innovations)
    record = ve.values[dgp.VE_FILTER_LAG:]
    return CompanionSpec(a=true_ar_coefficients_ma1(L), innovation_source="exact_ma1_filter",
                         payload=record)


def resampling_companion_spec(a, record) -> CompanionSpec:
    return CompanionSpec(a=np.asarray(a, dtype=float), innovation_source="residual_resample",
                         payload=np.asarray(record, dtype=float))


def parametric_companion_spec(a, innovations: dgp.InnovationSpec) -> CompanionSpec:
    return CompanionSpec(a=np.asarray(a, dtype=float), innovation_source="parametric",
                         payload=innovations)


def ar_model_acvf(a, sigma2: float, maxlag: int) -> ACVF:
    """Model-implied autocovariances gamma(h) = sigma2 sum_j alpha_j alpha_{j+h}.

    The moving-average expansion is extended until its tail contributes less
    than 1e-10 of gamma(0), capped at lag 10^4.
    """
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        gamma = np.zeros(maxlag + 1)
        gamma[0] = sigma2
        return ACVF(gamma=gamma, kind="theoretical")
    L = max(maxlag + 50, 200)
    while True:
        alpha = invert_ar_polynomial(a, L).alpha
        tail = np.abs(alpha[-50:]).max()
        head = np.abs(alpha).max()
        if tail <= 1e-12 * head or L >= 10 ** 4:
            break
        L = min(2 * L, 10 ** 4)
    gamma = np.array([sigma2 * np.dot(alpha[: alpha.size - h], alpha[h:]) for h in range(maxlag + 1)])
    return ACVF(gamma=gamma, kind="theoretical")


def _draw_companion_innovations(spec: CompanionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    if spec.innovation_source == "parametric":
        payload: dgp.InnovationSpec = spec.payload
        if payload.family == "gaussian":
            return payload.scale * rng.standard_normal(n)
        if payload.family == "centered_exponential":
            return payload.scale * (rng.exponential(1.0, n) - 1.0)
        return payload.scale * rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), n)
    record = np.asarray(spec.payload, dtype=float)
    return record[rng.integers(0, record.size, n)]


def build_companion(spec: CompanionSpec, n: int, seed: dgp.SeedLike, burnin: int | None = None) -> Series:
    """One companion path of length n, deterministic given seed."""
    if burnin is None:
        burnin = dgp.default_burnin(spec.a.size)
    rng = dgp.rng_from(seed)
    eps = _draw_companion_innovations(spec, n + burnin, rng)
    x = lfilter([1.0], np.concatenate([[1.0], -spec.a]), eps)[burnin:]
    return Series(x, origin="companion")


def companion_distribution(spec: CompanionSpec, statistic, n: int, M: int, seed: dgp.SeedLike) -> OracleResult:
    """Law of c_n (T~ - theta~) over M independent companion paths.

    ``statistic`` follows the experiment statistic protocol (evaluate /
    model_center / rate); theta~ is the exact model quantity of the companion
    process.
    """
    if M < 200:
        raise ValueError("M must be at least 200")
    theta = statistic.model_center(spec.a, spec.innovation_variance, n)
    rate = statistic.rate(n)
    vals = np.empty(M)
    for i in range(M):
        x = build_companion(spec, n, dgp.derive_seed(seed, 1, i))
        vals[i] = statistic.evaluate(x)
    return OracleResult(law=ecdf(rate * (vals - theta)), M=M, theta_tilde=float(theta),
                        statistic=statistic.name)
