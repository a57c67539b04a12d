"""Statistics of an HVG degree distribution.

Four families: the exponential-decay fit of log P(kappa) with its 95%
confidence interval, quantile-based skewness and kurtosis of the raw degree
sequence, normalized Shannon entropy, and discrete Fisher information.
Closed-form reference values for the exponential law and the degree law of
an uncorrelated series live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats as sps

from .hvg import DegreePDF

#: Exact decay rate of the degree law of an uncorrelated (iid) series.
WHITE_NOISE_RATE = math.log(1.5)


@dataclass(frozen=True)
class ScalingZone:
    """Degree window [lo, hi] over which log P(kappa) is fitted linearly."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 1 or self.hi <= self.lo:
            raise ValueError(f"bad scaling zone [{self.lo}, {self.hi}]")


DEFAULT_ZONES = {
    "chaotic": ScalingZone(3, 25),
    "stochastic": ScalingZone(3, 20),
}


@dataclass
class ExponentialFit:
    decay_rate: float
    ci_lo: float
    ci_hi: float
    r_squared: float
    zone: ScalingZone  # window actually used, after clipping to the support
    n_points: int


def fit_exponential_decay(pdf: DegreePDF, zone: Optional[ScalingZone] = None,
                          system_class: str = "stochastic") -> ExponentialFit:
    """Unweighted least squares of log P(kappa) on kappa; decay rate = -slope.

    Only bins with positive probability enter the regression. The 95%
    interval is symmetric around the estimate, using the OLS slope standard
    error and a Student-t quantile at n_points - 2 degrees of freedom.
    """
    if zone is None:
        zone = DEFAULT_ZONES[system_class]
    lo = max(zone.lo, pdf.support_min)
    hi = min(zone.hi, pdf.support_max)
    if hi <= lo:
        raise ValueError(f"zone [{zone.lo}, {zone.hi}] misses support "
                         f"[{pdf.support_min}, {pdf.support_max}]")
    probs = pdf.probabilities[lo - pdf.support_min: hi - pdf.support_min + 1]
    kappas = np.arange(lo, hi + 1, dtype=np.float64)
    keep = probs > 0
    kappas, probs = kappas[keep], probs[keep]
    if kappas.size < 3:
        raise ValueError(f"need >= 3 occupied bins in zone [{lo}, {hi}], "
                         f"found {kappas.size}")
    res = sps.linregress(kappas, np.log(probs))
    half = float(sps.t.ppf(0.975, kappas.size - 2)) * float(res.stderr)
    rate = float(-res.slope)
    return ExponentialFit(
        decay_rate=rate,
        ci_lo=rate - half,
        ci_hi=rate + half,
        r_squared=float(res.rvalue) ** 2,
        zone=ScalingZone(lo, hi),
        n_points=int(kappas.size),
    )


def classify_decay_rate(fit: ExponentialFit) -> str:
    """Position of the CI against the white-noise rate decides the class.

    Strictly below: chaotic. Strictly above: correlated noise. A CI that
    straddles the white-noise rate reads as uncorrelated (a point estimate
    never equals it exactly, so the interval makes the call).
    """
    if fit.ci_hi < WHITE_NOISE_RATE:
        return "chaotic"
    if fit.ci_lo > WHITE_NOISE_RATE:
        return "correlated"
    return "uncorrelated"


# ---------------------------------------------------------------------------
# quantile statistics
# ---------------------------------------------------------------------------


def sample_quantile(data, eta: float):
    """Smallest value whose empirical CDF reaches eta: min {x : F(x) >= eta}."""
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must be in (0,1)")
    arr = np.sort(np.asarray(data).ravel())
    if arr.size == 0:
        raise ValueError("empty data")
    idx = math.ceil(eta * arr.size) - 1
    return arr[max(idx, 0)]


@dataclass
class QuantileStats:
    skewness: float
    kurtosis: float
    xi: float
    rho: float


def quantile_skewness(degrees, xi: float = 0.1) -> float:
    """(q(1-xi) + q(xi) - 2 q(1/2)) / (q(1-xi) - q(xi)); always in [-1, 1]."""
    if not 0.0 < xi < 0.5:
        raise ValueError("xi must be in (0, 1/2)")
    q_lo = sample_quantile(degrees, xi)
    q_med = sample_quantile(degrees, 0.5)
    q_hi = sample_quantile(degrees, 1.0 - xi)
    spread = q_hi - q_lo
    if spread <= 0:
        raise ValueError("undefined skewness: q(1-xi) equals q(xi)")
    return float((q_hi + q_lo - 2 * q_med) / spread)


def quantile_kurtosis(degrees, xi: float = 0.1, rho: float = 0.01) -> float:
    """(q(1-rho) - q(rho)) / (q(1-xi) - q(xi)); >= 1 whenever defined."""
    if not 0.0 < rho < xi < 0.5:
        raise ValueError("need 0 < rho < xi < 1/2")
    q_lo = sample_quantile(degrees, xi)
    q_hi = sample_quantile(degrees, 1.0 - xi)
    spread = q_hi - q_lo
    if spread <= 0:
        raise ValueError("undefined kurtosis: q(1-xi) equals q(xi)")
    tail = sample_quantile(degrees, 1.0 - rho) - sample_quantile(degrees, rho)
    return float(tail / spread)


def compute_quantile_stats(degrees, xi: float = 0.1, rho: float = 0.01) -> QuantileStats:
    return QuantileStats(
        skewness=quantile_skewness(degrees, xi),
        kurtosis=quantile_kurtosis(degrees, xi, rho),
        xi=xi,
        rho=rho,
    )


# ---------------------------------------------------------------------------
# information quantifiers
# ---------------------------------------------------------------------------


def shannon_entropy(pdf: DegreePDF) -> tuple:
    """(raw entropy in nats, entropy normalized by log of the bin count).

    The raw sum runs over occupied bins (0 log 0 := 0); the normalizer is
    log of the number of bins in the contiguous support, so a uniform
    distribution scores 1 and a single bin scores 0.
    """
    probs = pdf.probabilities
    occupied = probs[probs > 0]
    raw = float(-(occupied * np.log(occupied)).sum())
    nbins = pdf.support_max - pdf.support_min + 1
    normalized = min(raw / math.log(nbins), 1.0) if nbins > 1 else 0.0
    return raw, normalized


def fisher_from_probabilities(probs) -> float:
    """Discrete Fisher information of an ordered probability vector, in [0, 1].

    F0 * sum of squared consecutive differences of the amplitudes sqrt(p);
    F0 is 1 when all mass sits in the first or last bin and 1/2 otherwise.
    """
    p = np.asarray(probs, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("need a non-empty 1-D probability vector")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("probabilities must be nonnegative and sum to 1")
    if p.size == 1:
        return 0.0
    total = float(np.sum(np.diff(np.sqrt(p)) ** 2))
    f0 = 1.0 if (p[0] == 1.0 or p[-1] == 1.0) else 0.5
    return min(f0 * total, 1.0)


def fisher_information(pdf: DegreePDF) -> float:
    """Fisher information of the degree distribution over the domain [1, kappa_max].

    Degrees below the observed minimum are genuine zero bins (interior
    gaps are kept as zeros too), so a sharp peak right above an empty bin
    contributes its full gradient. Degree-1 mass can only come from the
    two series endpoints; that boundary artifact is excluded (and the rest
    renormalized) so the value does not drift with series length.
    """
    probs = pdf.probabilities
    smin = pdf.support_min
    if smin == 1:
        endpoint_mass = probs[0]
        probs = probs[1:]
        smin = 2
        if probs.size == 0:
            return 0.0
        probs = probs / (1.0 - endpoint_mass)
    vector = np.concatenate([np.zeros(smin - 1), probs])
    return fisher_from_probabilities(vector)


@dataclass
class InfoPoint:
    """One point of the entropy-Fisher plane, plus the raw entropy behind it."""

    shannon_raw: float
    shannon_normalized: float
    shannon_rel_wgn: float
    fisher: float
    label: str = ""


def make_info_point(pdf: DegreePDF, s_wgn_reference: float, label: str = "") -> InfoPoint:
    """Bundle the entropy and Fisher values; the reference rescales raw entropy."""
    if s_wgn_reference <= 0:
        raise ValueError("white-noise entropy reference must be positive")
    raw, normalized = shannon_entropy(pdf)
    return InfoPoint(
        shannon_raw=raw,
        shannon_normalized=normalized,
        shannon_rel_wgn=raw / s_wgn_reference,
        fisher=fisher_information(pdf),
        label=label,
    )


# ---------------------------------------------------------------------------
# closed-form references
# ---------------------------------------------------------------------------


def white_noise_degree_pdf(kappa_max: int = 20) -> DegreePDF:
    """Degree law of an iid series, (1/3)(2/3)**(k-2) for k >= 2, truncated.

    Renormalization after truncation only shifts the intercept of
    log P(kappa), so the fitted decay rate stays exactly log(3/2).
    """
    kappas = np.arange(2, kappa_max + 1)
    probs = (2.0 / 3.0) ** (kappas - 2) / 3.0
    return DegreePDF.from_probabilities(2, probs / probs.sum())


def exponential_degree_pdf(rate: float = 1.0, kappa_max: int = 20) -> DegreePDF:
    """Discretized standard exponential law over [1, kappa_max], renormalized."""
    kappas = np.arange(1, kappa_max + 1)
    probs = np.exp(-rate * kappas)
    return DegreePDF.from_probabilities(1, probs / probs.sum())


def white_noise_quantile(eta: float) -> int:
    """Quantile of the iid degree law via its CDF, 1 - (2/3)**(k-1)."""
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must be in (0,1)")
    steps = math.log(1.0 - eta) / math.log(2.0 / 3.0)
    return max(2, 1 + math.ceil(steps))


def exponential_quantile(eta: float) -> float:
    """Quantile of the standard exponential distribution."""
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must be in (0,1)")
    return -math.log(1.0 - eta)


def _reference_stats(quantile, xi: float, rho: float) -> QuantileStats:
    q_lo, q_med, q_hi = quantile(xi), quantile(0.5), quantile(1.0 - xi)
    spread = q_hi - q_lo
    return QuantileStats(
        skewness=(q_hi + q_lo - 2 * q_med) / spread,
        kurtosis=(quantile(1.0 - rho) - quantile(rho)) / spread,
        xi=xi,
        rho=rho,
    )


def exponential_reference_stats(xi: float = 0.1, rho: float = 0.01) -> QuantileStats:
    """Analytic skewness/kurtosis of the standard exponential (0.465, 2.091)."""
    return _reference_stats(exponential_quantile, xi, rho)


def white_noise_reference_stats(xi: float = 0.1, rho: float = 0.01) -> QuantileStats:
    """Analytic skewness/kurtosis of the iid degree law (3/5, 11/5)."""
    return _reference_stats(white_noise_quantile, xi, rho)
