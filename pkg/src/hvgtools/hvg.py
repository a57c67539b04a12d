"""Horizontal visibility graph transform and degree statistics.

Samples become nodes; two nodes are linked when every value strictly
between them lies below both heights. Equal heights block visibility, so
the criterion stays deterministic for discrete-valued series. The builder
is a single left-to-right pass over a monotone stack of not-yet-occluded
indices: each index is pushed once and popped at most once, so the
construction is O(n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def build_hvg(values, collect_edges: bool = False):
    """Degree sequence of the horizontal visibility graph of ``values``.

    Returns an int64 array, one degree per sample; with ``collect_edges``
    also returns the 0-indexed edge list. Matches the quadratic pairwise
    criterion exactly (adjacent samples are always linked).
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("series must be 1-D with at least 2 samples")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite values")
    xs = x.tolist()
    n = len(xs)
    deg = [0] * n
    stack = []  # indices with strictly decreasing heights, none occluded yet
    edges = [] if collect_edges else None
    for j in range(n):
        xj = xs[j]
        while stack:
            i = stack[-1]
            xi = xs[i]
            deg[i] += 1
            deg[j] += 1
            if edges is not None:
                edges.append((i, j))
            if xi > xj:
                break
            stack.pop()
            if xi == xj:
                break  # an equal height hides everything behind it
        stack.append(j)
    degrees = np.asarray(deg, dtype=np.int64)
    if collect_edges:
        return degrees, edges
    return degrees


@dataclass
class DegreePDF:
    """Degree histogram over the contiguous range [support_min, support_max].

    Zero-count gaps inside the range are retained; the first and last bins
    are nonzero by construction.
    """

    support_min: int
    support_max: int
    counts: np.ndarray
    n_nodes: int

    @property
    def kappas(self) -> np.ndarray:
        return np.arange(self.support_min, self.support_max + 1)

    @property
    def probabilities(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=np.float64) / self.n_nodes

    def probability_of(self, kappa: int) -> float:
        if not self.support_min <= kappa <= self.support_max:
            return 0.0
        return float(self.counts[kappa - self.support_min]) / self.n_nodes

    @classmethod
    def from_probabilities(cls, support_min: int, probs) -> "DegreePDF":
        """Wrap an analytic or synthetic probability vector (n_nodes = 1)."""
        probs = np.asarray(probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("need a non-empty 1-D probability vector")
        if abs(probs.sum() - 1.0) > 1e-9:
            raise ValueError("probabilities must sum to 1")
        return cls(support_min, support_min + probs.size - 1, probs, 1)


def degree_pdf(degrees) -> DegreePDF:
    """Empirical degree distribution: counts / node count over the support."""
    degs = np.asarray(degrees)
    if degs.size == 0:
        raise ValueError("empty degree sequence")
    smin, smax = int(degs.min()), int(degs.max())
    if smin < 1:
        raise ValueError("degrees must be >= 1")
    counts = np.bincount(degs - smin, minlength=smax - smin + 1)
    return DegreePDF(smin, smax, counts, int(degs.size))


def write_degree_pdf(pdf: DegreePDF, path) -> None:
    """Two-column plain text: degree, probability."""
    table = np.column_stack([pdf.kappas, pdf.probabilities])
    np.savetxt(path, table, fmt=["%d", "%.17g"])


def degree_pdf_dict(pdf: DegreePDF) -> dict:
    return {
        "support_min": pdf.support_min,
        "support_max": pdf.support_max,
        "counts": [int(c) for c in pdf.counts],
        "n_nodes": pdf.n_nodes,
    }


def write_edges(edges, path) -> None:
    """Edge list as 0-indexed index pairs, one per line."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, j in edges:
            fh.write(f"{i} {j}\n")
