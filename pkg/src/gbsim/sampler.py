"""Exact sampling of output patterns from an enumerated probability table.

The table covers every pattern up to a photon cutoff. Mass beyond the cutoff
is not renormalized away; it forms an explicit residual bucket that draws can
land in and that is reported as ``residual_draws``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_LIMITS, DEFAULT_TOLERANCES
from .ensembles import UniformStream
from .errors import ResourceError
from .probability import (
    enumerate_bounded_patterns,
    pattern_probability_squeezed,
    ppe_tail,
    total_pair_distribution,
)
from .state import as_squeeze, as_unitary, warn_if_rank_deficient


@dataclass(frozen=True, eq=False)
class DistributionTable:
    patterns: list
    probabilities: np.ndarray
    residual: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        probs = np.asarray(self.probabilities, dtype=np.float64)
        if probs.shape != (len(self.patterns),):
            raise ValueError("one probability per pattern is required")
        if np.any(probs < 0) or self.residual < 0:
            raise ValueError("probabilities must be non-negative")
        total = math.fsum(probs) + self.residual
        if abs(total - 1.0) > DEFAULT_TOLERANCES.table_normalization:
            raise ValueError(f"table mass plus residual is {total!r}, not 1")
        object.__setattr__(self, "probabilities", probs)

    def __len__(self):
        return len(self.patterns)


@dataclass(frozen=True)
class SampleRecord:
    pattern: tuple
    count: int
    draws: int


def _residual_mass(params, patterns, probs, max_total, max_per_mode) -> float:
    max_pairs = max_total // 2
    r = params.r[params.r > 0]
    if r.size == 0:
        tail = 0.0
    elif np.all(r == r[0]):
        tail = ppe_tail(r.size, float(r[0]), max_pairs)
    else:
        tail = max(0.0, 1.0 - math.fsum(total_pair_distribution(params, max_pairs)))
    if max_per_mode >= max_total:
        return tail
    # per-mode cap drops some in-cutoff patterns; count their mass as residual too
    law = total_pair_distribution(params, max_pairs)
    kept = np.zeros(max_pairs + 1)
    for pat, p in zip(patterns, probs):
        if sum(pat) % 2 == 0:
            kept[sum(pat) // 2] += p
    return tail + float(np.sum(np.clip(law - kept, 0.0, None)))


def build_distribution(t, params, max_total: int, max_per_mode: int | None = None,
                       unitary_seed: int | None = None, max_dim: int | None = None) -> DistributionTable:
    """Probability table over all patterns with at most ``max_total`` photons.

    Raises
    ------
    ResourceError
        If ``max_total`` photons would need a hafnian larger than the cap.
    """
    t, params = as_unitary(t), as_squeeze(params)
    cap = DEFAULT_LIMITS.hafnian_dim if max_dim is None else max_dim
    if max_total > cap:
        raise ResourceError(f"patterns with {max_total} photons need a {max_total}x{max_total} hafnian (cap {cap})")
    per_mode = max_total if max_per_mode is None else max_per_mode
    warn_if_rank_deficient(params, max_total)
    patterns = enumerate_bounded_patterns(params.modes, max_total, per_mode)
    probs = np.array([pattern_probability_squeezed(t, params, p, max_dim=max_dim) for p in patterns])
    residual = _residual_mass(params, patterns, probs, max_total, per_mode)
    metadata = {
        "modes": params.modes,
        "squeezers": params.squeezers,
        "squeeze": params.r.tolist(),
        "unitary_seed": unitary_seed,
        "max_total": max_total,
        "max_per_mode": per_mode,
    }
    return DistributionTable(patterns, probs, residual, metadata)


def draw_indices(table: DistributionTable, draws: int, seed: int) -> np.ndarray:
    """Inverse-CDF draws; index ``len(table)`` is the beyond-cutoff bucket."""
    weights = np.append(table.probabilities, table.residual)
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    u = UniformStream(seed).uniforms(draws)
    idx = np.searchsorted(cdf, u, side="right")
    # guards u landing exactly on the final edge after rounding
    return np.minimum(idx, len(weights) - 1)


def draw(table: DistributionTable, draws: int, seed: int) -> list[SampleRecord]:
    """Draw ``draws`` patterns. Records come in table order and only for patterns seen;
    draws in the residual bucket are the shortfall ``draws - sum(counts)``."""
    counts = np.bincount(draw_indices(table, draws, seed), minlength=len(table) + 1)
    return [SampleRecord(table.patterns[i], int(c), int(draws)) for i, c in enumerate(counts[:-1]) if c]


def residual_draws(samples: list[SampleRecord], draws: int) -> int:
    return int(draws - sum(s.count for s in samples))


def total_photon_histogram(samples: list[SampleRecord]) -> dict[int, float]:
    """Relative frequency of each total photon number, over all draws."""
    if not samples:
        return {}
    draws = samples[0].draws
    hist = Counter()
    for s in samples:
        hist[sum(s.pattern)] += s.count
    return {n: c / draws for n, c in sorted(hist.items())}


def empirical_tv_distance(table: DistributionTable, samples: list[SampleRecord], draws: int) -> float:
    """Total-variation distance between the draws and the table, residual bucket included."""
    lookup = {p: i for i, p in enumerate(table.patterns)}
    freq = np.zeros(len(table) + 1)
    for s in samples:
        freq[lookup[s.pattern]] = s.count / draws
    freq[-1] = residual_draws(samples, draws) / draws
    exact = np.append(table.probabilities, table.residual)
    return 0.5 * float(np.sum(np.abs(freq - exact)))
