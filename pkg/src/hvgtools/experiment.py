"""Batch orchestration: system batteries, length-stability sweeps, and the
entropy-Fisher plane dataset, with reproducibility manifests.

A battery is a list of system descriptors crossed with series lengths; each
run generates a series, builds its HVG, computes every quantifier, and is
written out as one CSV row plus a JSON manifest whose hash pins the inputs.
Reruns of the same config reproduce the scientific fields bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from ._version import __version__
from .hvg import DegreePDF, build_hvg, degree_pdf, write_degree_pdf
from .maps import DEFAULT_TRANSIENT, get_map, is_registered_map, iterate_map
from .noise import fractional_brownian_motion, fractional_gaussian_noise, powerlaw_noise
from .quantifiers import (
    DEFAULT_ZONES,
    ExponentialFit,
    InfoPoint,
    QuantileStats,
    ScalingZone,
    classify_decay_rate,
    compute_quantile_stats,
    fisher_information,
    fit_exponential_decay,
    make_info_point,
    shannon_entropy,
)
from .series import SystemDescriptor, TimeSeries

STOCHASTIC_SYSTEMS = ("noise", "fgn", "fbm")

WORKERS_ENV = "HVGTOOLS_WORKERS"

_WGN_REFERENCE_SEED = 90210
_wgn_cache: dict = {}


def system_class(system: str) -> str:
    return "stochastic" if system in STOCHASTIC_SYSTEMS else "chaotic"


def generate_series(desc: SystemDescriptor, n: int,
                    transient: int = DEFAULT_TRANSIENT) -> TimeSeries:
    """Produce the series a descriptor points at (map orbit or noise draw).

    Stochastic systems must carry a seed; the transient applies to map
    orbits only and is recorded as 0 for stationary noise.
    """
    if desc.system in STOCHASTIC_SYSTEMS:
        if desc.seed is None:
            raise ValueError(f"{desc.system}: stochastic systems need a seed")
        if desc.system == "noise":
            k = float(desc.params.get("k", 0.0))
            if not 0.0 <= k <= 2.5:
                raise ValueError("spectral exponent k must be in [0, 2.5]")
            values = powerlaw_noise(k, n, desc.seed)
        else:
            hurst = float(desc.params.get("H", 0.5))
            gen = fractional_gaussian_noise if desc.system == "fgn" else fractional_brownian_motion
            values = gen(hurst, n, desc.seed)
        return TimeSeries(values, desc, 0)
    return iterate_map(desc, n, transient)


def default_label(desc: SystemDescriptor) -> str:
    if desc.system == "noise":
        return f"noise k={float(desc.params.get('k', 0.0)):g}"
    if desc.system in ("fgn", "fbm"):
        return f"{desc.system} H={float(desc.params.get('H', 0.5)):g}"
    if desc.system == "schuster":
        return f"schuster z={float(desc.params.get('z', 2.0)):g}"
    mapdef = get_map(desc.system)
    if mapdef.dim > 1:
        return f"{desc.system} ({mapdef.coordinate_names[desc.coordinate]})"
    return desc.system


def wgn_entropy_reference(n: int, replicates: int = 10,
                          seed: int = _WGN_REFERENCE_SEED) -> float:
    """Mean raw HVG entropy of white Gaussian noise at length ``n``.

    Computed once per (n, replicates, seed) and cached; immutable after
    that, so concurrent readers are safe.
    """
    key = (n, replicates, seed)
    if key not in _wgn_cache:
        vals = []
        for i in range(replicates):
            series = fractional_gaussian_noise(0.5, n, seed + i)
            raw, _ = shannon_entropy(degree_pdf(build_hvg(series)))
            vals.append(raw)
        _wgn_cache[key] = float(np.mean(vals))
    return _wgn_cache[key]


# ---------------------------------------------------------------------------
# battery
# ---------------------------------------------------------------------------


@dataclass
class BatteryConfig:
    systems: list
    lengths: list = field(default_factory=lambda: [100_000])
    transient: int = DEFAULT_TRANSIENT
    zones: dict = field(default_factory=dict)  # per-class overrides
    wgn_replicates: int = 10
    wgn_seed: int = _WGN_REFERENCE_SEED
    output_dir: Optional[str] = None
    workers: int = 0  # 0: take HVGTOOLS_WORKERS, default 1

    def __post_init__(self):
        if not self.systems:
            raise ValueError("battery config needs at least one system")
        if not self.lengths:
            raise ValueError("battery config needs at least one length")
        for desc in self.systems:
            if desc.system in STOCHASTIC_SYSTEMS and desc.seed is None:
                raise ValueError(
                    f"{default_label(desc)}: stochastic descriptors need a seed")

    def zone_for(self, cls: str) -> ScalingZone:
        return self.zones.get(cls, DEFAULT_ZONES[cls])


@dataclass
class RunRecord:
    descriptor: SystemDescriptor
    label: str
    system_class: str
    length: int
    transient: int
    fit: Optional[ExponentialFit] = None
    classification: str = ""
    quantiles: Optional[QuantileStats] = None
    info: Optional[InfoPoint] = None
    pdf: Optional[DegreePDF] = None
    wall_time_s: float = 0.0
    manifest_hash: str = ""
    error: str = ""


def manifest_hash(desc: SystemDescriptor, n: int, transient: int) -> str:
    payload = json.dumps(
        dict(desc.key(), n=n, transient=transient, version=__version__),
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def analyze_values(values, cls: str, zone: Optional[ScalingZone] = None,
                   s_wgn: Optional[float] = None, label: str = "",
                   xi: float = 0.1, rho: float = 0.01):
    """Full quantifier set for a raw series: (fit, classification, quantiles, info, pdf).

    The decay fit and the quantile statistics may fail on degenerate
    distributions; those failures surface as exceptions for the caller to
    record. Entropy and Fisher are always defined.
    """
    degrees = build_hvg(values)
    pdf = degree_pdf(degrees)
    if s_wgn is None:
        s_wgn = wgn_entropy_reference(len(degrees))
    fit = fit_exponential_decay(pdf, zone=zone, system_class=cls)
    quantiles = compute_quantile_stats(degrees, xi=xi, rho=rho)
    info = make_info_point(pdf, s_wgn, label=label)
    return fit, classify_decay_rate(fit), quantiles, info, pdf


def run_one(desc: SystemDescriptor, n: int, transient: int,
            zone: Optional[ScalingZone] = None,
            s_wgn: Optional[float] = None) -> RunRecord:
    label = default_label(desc)
    cls = system_class(desc.system)
    record = RunRecord(
        descriptor=desc, label=label, system_class=cls, length=n,
        transient=transient, manifest_hash=manifest_hash(desc, n, transient),
    )
    started = time.perf_counter()
    try:
        ts = generate_series(desc, n, transient)
        fit, classification, quantiles, info, pdf = analyze_values(
            ts.values, cls, zone=zone, s_wgn=s_wgn, label=label)
        record.fit = fit
        record.classification = classification
        record.quantiles = quantiles
        record.info = info
        record.pdf = pdf
    except (ValueError, RuntimeError) as exc:
        record.error = f"{label}: {exc}"
    record.wall_time_s = time.perf_counter() - started
    return record


def _worker_count(config: BatteryConfig) -> int:
    if config.workers > 0:
        return config.workers
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


def _run_job(args):
    desc, n, transient, zone, s_wgn = args
    return run_one(desc, n, transient, zone=zone, s_wgn=s_wgn)


def run_battery(config: BatteryConfig) -> list:
    """One record per (system, length), in config order; outputs written if
    ``output_dir`` is set. Failures are recorded per run, never fatal."""
    references = {
        n: wgn_entropy_reference(n, config.wgn_replicates, config.wgn_seed)
        for n in config.lengths
    }
    jobs = [
        (desc, n, config.transient,
         config.zone_for(system_class(desc.system)), references[n])
        for desc in config.systems
        for n in config.lengths
    ]
    workers = _worker_count(config)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_job, jobs))
    else:
        records = [_run_job(job) for job in jobs]
    if config.output_dir is not None:
        write_battery_outputs(records, config.output_dir)
    return records


BATTERY_COLUMNS = [
    "label", "class", "system", "coordinate", "seed", "n",
    "lambda", "ci_lo", "ci_hi", "r_squared", "gamma1", "gamma2",
    "s_raw", "s_norm", "s_rel_wgn", "fisher", "classification", "error",
]


def record_row(record: RunRecord) -> dict:
    desc = record.descriptor
    row = {
        "label": record.label,
        "class": record.system_class,
        "system": desc.system,
        "coordinate": desc.coordinate,
        "seed": "" if desc.seed is None else desc.seed,
        "n": record.length,
        "lambda": "", "ci_lo": "", "ci_hi": "", "r_squared": "",
        "gamma1": "", "gamma2": "",
        "s_raw": "", "s_norm": "", "s_rel_wgn": "", "fisher": "",
        "classification": record.classification,
        "error": record.error,
    }
    if record.fit is not None:
        row.update({
            "lambda": repr(record.fit.decay_rate),
            "ci_lo": repr(record.fit.ci_lo),
            "ci_hi": repr(record.fit.ci_hi),
            "r_squared": repr(record.fit.r_squared),
        })
    if record.quantiles is not None:
        row["gamma1"] = repr(record.quantiles.skewness)
        row["gamma2"] = repr(record.quantiles.kurtosis)
    if record.info is not None:
        row.update({
            "s_raw": repr(record.info.shannon_raw),
            "s_norm": repr(record.info.shannon_normalized),
            "s_rel_wgn": repr(record.info.shannon_rel_wgn),
            "fisher": repr(record.info.fisher),
        })
    return row


def _slug(label: str) -> str:
    return "".join(c if c.isalnum() or c in "._-" else "_" for c in label)


def write_battery_outputs(records, output_dir) -> None:
    out = Path(output_dir)
    (out / "pdfs").mkdir(parents=True, exist_ok=True)
    (out / "manifests").mkdir(exist_ok=True)

    rows = [record_row(r) for r in records]
    with open(out / "battery.csv", "w", encoding="utf-8") as fh:
        fh.write(",".join(BATTERY_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(str(row[c]) for c in BATTERY_COLUMNS) + "\n")
    with open(out / "battery.json", "w", encoding="utf-8") as fh:
        json.dump(rows, fh, indent=2)
        fh.write("\n")

    for record in records:
        stem = f"{_slug(record.label)}-n{record.length}"
        if record.pdf is not None:
            write_degree_pdf(record.pdf, out / "pdfs" / f"{stem}.txt")
        manifest = dict(
            record.descriptor.key(),
            n=record.length,
            transient=record.transient,
            version=__version__,
            manifest_hash=record.manifest_hash,
            wall_time_s=record.wall_time_s,
        )
        with open(out / "manifests" / f"{stem}.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")


# ---------------------------------------------------------------------------
# length stability
# ---------------------------------------------------------------------------


@dataclass
class StabilityRow:
    length: int
    s_mean: float
    s_std: float
    f_mean: float
    f_std: float
    s_rel_change: float  # vs the previous (shorter) length; 0 for the first
    f_rel_change: float


def length_stability(desc: SystemDescriptor, lengths, replicates: int = 10,
                     transient: int = DEFAULT_TRANSIENT) -> list:
    """Mean and spread of entropy and Fisher information per series length.

    Replicates reseed stochastic systems and jitter map starts (both via
    seed + replicate index), so the descriptor needs a seed whenever
    replicates > 1.
    """
    lengths = sorted(int(x) for x in lengths)
    if len(lengths) < 2:
        raise ValueError("need at least two lengths to compare")
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    base_seed = desc.seed
    if replicates > 1 and base_seed is None:
        raise ValueError("replicated stability runs need a seed to vary")

    rows = []
    prev_s = prev_f = None
    for n in lengths:
        s_vals, f_vals = [], []
        for i in range(replicates):
            seed = None if base_seed is None else base_seed + i
            ts = generate_series(replace(desc, seed=seed), n, transient)
            pdf = degree_pdf(build_hvg(ts.values))
            raw, _ = shannon_entropy(pdf)
            s_vals.append(raw)
            f_vals.append(fisher_information(pdf))
        s_mean, f_mean = float(np.mean(s_vals)), float(np.mean(f_vals))
        rows.append(StabilityRow(
            length=n,
            s_mean=s_mean,
            s_std=float(np.std(s_vals)),
            f_mean=f_mean,
            f_std=float(np.std(f_vals)),
            s_rel_change=0.0 if prev_s is None else abs(s_mean - prev_s) / abs(prev_s),
            f_rel_change=0.0 if prev_f is None else abs(f_mean - prev_f) / abs(prev_f),
        ))
        prev_s, prev_f = s_mean, f_mean
    return rows


def write_stability_csv(rows, path) -> None:
    cols = ["length", "s_mean", "s_std", "f_mean", "f_std",
            "s_rel_change", "f_rel_change"]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for r in rows:
            fh.write(",".join([
                str(r.length), repr(r.s_mean), repr(r.s_std),
                repr(r.f_mean), repr(r.f_std),
                repr(r.s_rel_change), repr(r.f_rel_change),
            ]) + "\n")


# ---------------------------------------------------------------------------
# entropy-Fisher plane
# ---------------------------------------------------------------------------


@dataclass
class PlaneRow:
    label: str
    system_class: str
    s_rel_wgn: float
    fisher: float


def plane_dataset(records) -> list:
    """Plot-ready (label, class, relative entropy, Fisher) rows.

    All records must share one series length; errored records are dropped.
    """
    usable = [r for r in records if not r.error and r.info is not None]
    lengths = {r.length for r in usable}
    if len(lengths) > 1:
        raise ValueError(f"records mix series lengths {sorted(lengths)}")
    return [
        PlaneRow(r.label, r.system_class, r.info.shannon_rel_wgn, r.info.fisher)
        for r in usable
    ]


def write_plane_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("label,class,s_rel_wgn,fisher\n")
        for r in rows:
            fh.write(f"{r.label},{r.system_class},{r.s_rel_wgn!r},{r.fisher!r}\n")


# ---------------------------------------------------------------------------
# config files and canned batteries
# ---------------------------------------------------------------------------


def load_battery_config(path) -> BatteryConfig:
    """Parse the JSON battery schema (see README) into a BatteryConfig."""
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValueError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"config is not valid JSON: {exc}") from None

    if "systems" not in raw or not isinstance(raw["systems"], list):
        raise ValueError("config needs a 'systems' list")
    systems = []
    for entry in raw["systems"]:
        if "system" not in entry:
            raise ValueError(f"system entry without a 'system' id: {entry}")
        name = entry["system"]
        params = dict(entry.get("params", {}))
        seed = entry.get("seed")
        coordinate = entry.get("coordinate", 0)
        if coordinate is None:  # null: every coordinate of the map
            dim = get_map(name).dim if is_registered_map(name) else 1
            coords = range(dim)
        else:
            coords = [int(coordinate)]
        for coord in coords:
            systems.append(SystemDescriptor(name, params, coord, seed))

    zones = {
        cls: ScalingZone(int(lo), int(hi))
        for cls, (lo, hi) in raw.get("zones", {}).items()
    }
    wgn = raw.get("wgn", {})
    return BatteryConfig(
        systems=systems,
        lengths=[int(x) for x in raw.get("lengths", [100_000])],
        transient=int(raw.get("transient", DEFAULT_TRANSIENT)),
        zones=zones,
        wgn_replicates=int(wgn.get("replicates", 10)),
        wgn_seed=int(wgn.get("seed", _WGN_REFERENCE_SEED)),
        output_dir=raw.get("output_dir"),
        workers=int(raw.get("workers", 0)),
    )


def benchmark_battery_config(output_dir=None, n: int = 100_000) -> BatteryConfig:
    """The seven benchmark systems with published reference quantifiers."""
    systems = [
        SystemDescriptor("noise", {"k": 0.0}, seed=101),
        SystemDescriptor("fbm", {"H": 0.5}, seed=102),
        SystemDescriptor("fgn", {"H": 0.5}, seed=103),
        SystemDescriptor("logistic", seed=104),
        SystemDescriptor("cusp", seed=105),
        SystemDescriptor("schuster", {"z": 1.25}, seed=107),
        SystemDescriptor("schuster", {"z": 2.0}, seed=225),
    ]
    return BatteryConfig(systems=systems, lengths=[n], output_dir=output_dir)


def full_battery_config(output_dir=None, n: int = 100_000) -> BatteryConfig:
    """Every registered map (all coordinates), the schuster family, and the
    three stochastic ladders, at one length."""
    systems = []
    seed = 1000
    from .maps import registered_maps  # registry may have grown at runtime

    for name in registered_maps():
        if name == "schuster":
            continue
        for coord in range(get_map(name).dim):
            systems.append(SystemDescriptor(name, coordinate=coord, seed=seed))
            seed += 1
    for z in (1.25, 1.5, 1.75, 2.0):
        systems.append(SystemDescriptor("schuster", {"z": z}, seed=seed))
        seed += 1
    for k in np.arange(0.0, 2.51, 0.25):
        systems.append(SystemDescriptor("noise", {"k": round(float(k), 2)}, seed=seed))
        seed += 1
    for h in np.arange(0.1, 0.91, 0.1):
        systems.append(SystemDescriptor("fgn", {"H": round(float(h), 1)}, seed=seed))
        seed += 1
    for h in np.arange(0.1, 0.91, 0.1):
        systems.append(SystemDescriptor("fbm", {"H": round(float(h), 1)}, seed=seed))
        seed += 1
    return BatteryConfig(systems=systems, lengths=[n], output_dir=output_dir)
