"""hvgtools: horizontal visibility graphs and information quantifiers.

Turns a time series into its horizontal visibility graph, summarizes the
node-degree distribution (exponential decay rate, quantile shape measures,
Shannon entropy, Fisher information), and batch-runs whole families of
chaotic maps and stochastic processes onto the entropy-Fisher plane.
"""

from ._version import __version__
from .series import DEFAULT_TRANSIENT, SystemDescriptor, TimeSeries, read_series, write_series
from .maps import (
    MapDef,
    OrbitEscape,
    get_map,
    iterate_map,
    register_map,
    registered_maps,
    schuster,
)
from .noise import fractional_brownian_motion, fractional_gaussian_noise, powerlaw_noise
from .hvg import DegreePDF, build_hvg, degree_pdf, write_degree_pdf
from .quantifiers import (
    DEFAULT_ZONES,
    WHITE_NOISE_RATE,
    ExponentialFit,
    InfoPoint,
    QuantileStats,
    ScalingZone,
    classify_decay_rate,
    compute_quantile_stats,
    exponential_reference_stats,
    fisher_from_probabilities,
    fisher_information,
    fit_exponential_decay,
    make_info_point,
    quantile_kurtosis,
    quantile_skewness,
    sample_quantile,
    shannon_entropy,
    white_noise_degree_pdf,
    white_noise_reference_stats,
)
from .experiment import (
    BatteryConfig,
    RunRecord,
    StabilityRow,
    PlaneRow,
    benchmark_battery_config,
    full_battery_config,
    generate_series,
    length_stability,
    load_battery_config,
    plane_dataset,
    run_battery,
    wgn_entropy_reference,
)

__all__ = [name for name in dir() if not name.startswith("_")]
