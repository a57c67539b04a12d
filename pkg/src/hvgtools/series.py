"""Time-series container with provenance, plus plain-text and JSON export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

#: Iterations discarded before a map orbit is recorded, unless overridden.
DEFAULT_TRANSIENT = 100_000


@dataclass(frozen=True)
class SystemDescriptor:
    """One generator run: system id, parameters, emitted coordinate, seed.

    ``seed`` drives the RNG of stochastic systems and the starting-point
    draw of maps that want a randomized start; maps run from their stored
    default start when it is None.
    """

    system: str
    params: dict = field(default_factory=dict)
    coordinate: int = 0
    seed: Optional[int] = None

    def key(self) -> dict:
        """Canonical dict used for manifests and hashing."""
        return {
            "system": self.system,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "coordinate": self.coordinate,
            "seed": self.seed,
        }


@dataclass
class TimeSeries:
    """Real-valued samples plus the descriptor and transient that made them."""

    values: np.ndarray
    descriptor: SystemDescriptor
    transient: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size < 2:
            raise ValueError("a time series needs at least 2 samples")
        if not np.all(np.isfinite(self.values)):
            bad = int(np.flatnonzero(~np.isfinite(self.values))[0])
            raise ValueError(f"non-finite sample at index {bad}")

    def __len__(self):
        return int(self.values.size)

    def manifest(self, version: str = "") -> dict:
        m = dict(self.descriptor.key(), n=len(self), transient=self.transient)
        if version:
            m["version"] = version
        return m


def write_series(ts: TimeSeries, path) -> None:
    """One sample per line, full double precision."""
    np.savetxt(path, ts.values, fmt="%.17g")


def write_manifest(ts: TimeSeries, path, version: str = "") -> None:
    payload = json.dumps(ts.manifest(version), indent=2, sort_keys=True)
    Path(path).write_text(payload + "\n")


def read_series(path) -> np.ndarray:
    """Load a one-column series file written by :func:`write_series`."""
    try:
        values = np.loadtxt(path, dtype=np.float64, ndmin=1)
    except (ValueError, OSError) as exc:
        raise ValueError(f"malformed series file {path}: {exc}") from None
    if values.ndim != 1:
        raise ValueError(f"expected one sample per line in {path}")
    return values
