"""Photon-pattern probabilities, pattern enumeration and photon-number statistics.

Two routes to a pattern probability are provided:

``pattern_probability_general``
    Works for any zero-mean Gaussian state: ``|sigma_Q|^(-1/2) Haf(A_S) / n!``
    where ``A_S`` repeats row/column ``j`` and ``j + M`` of the sampling matrix
    ``n_j`` times each.
``pattern_probability_squeezed``
    Squeezed vacua through an interferometer:
    ``|sigma_Q|^(-1/2) |Haf(B_S)|^2 / n!`` with ``B = T diag(tanh r) T^T``.

The photon-pair count of ``K`` equal squeezers follows a negative binomial law,
which provides normalization tails and cross-checks.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import DimensionError, DomainError, InvalidStateError
from .hafnian import hafnian
from .linalg import determinant, log_abs_determinant, submatrix_by_multiset
from .state import (
    GaussianState,
    as_squeeze,
    as_unitary,
    b_matrix,
    prefactor_log,
    sampling_matrix_a,
    sigma_q,
)

PhotonPattern = tuple


def as_pattern(pattern, modes: int | None = None) -> tuple:
    pat = tuple(int(n) for n in pattern)
    if any(n < 0 for n in pat):
        raise DomainError(f"photon counts must be non-negative: {pat}")
    if modes is not None and len(pat) != modes:
        raise DimensionError(f"pattern {pat} has {len(pat)} entries for {modes} modes")
    return pat


def pattern_indices(pattern) -> np.ndarray:
    """Mode ``j`` repeated ``n_j`` times, in mode order."""
    return np.repeat(np.arange(len(pattern)), pattern)


def _log_factorial_product(pattern) -> float:
    return float(sum(math.lgamma(n + 1) for n in pattern))


def _clamp(value: complex, tol: float) -> float:
    if abs(value.imag) > tol:
        raise InvalidStateError(f"probability has imaginary part {value.imag:.3e}")
    p = value.real
    if p < -tol:
        raise InvalidStateError(f"negative probability {p:.3e}")
    return max(p, 0.0)


def pattern_probability_general(state: GaussianState, pattern, max_dim: int | None = None) -> float:
    """Probability of ``pattern`` for an arbitrary zero-mean Gaussian state."""
    pat = as_pattern(pattern, state.modes)
    idx = pattern_indices(pat)
    idx = np.concatenate([idx, idx + state.modes])
    a_s = submatrix_by_multiset(sampling_matrix_a(state), idx, idx)
    haf = hafnian(a_s, max_dim=max_dim)
    q = sigma_q(state)
    tol = DEFAULT_TOLERANCES
    det_q = determinant(q)
    prefactor = det_q.real ** -0.5 if det_q.real > 0 else 0.0
    if prefactor >= tol.prefactor_underflow:
        return _clamp(prefactor * haf / math.prod(math.factorial(n) for n in pat), tol.imag_residue)
    # log-space: the prefactor alone would underflow
    if abs(haf.imag) > tol.imag_residue * max(abs(haf), 1.0):
        raise InvalidStateError(f"hafnian has imaginary part {haf.imag:.3e}")
    if haf.real <= 0:
        return 0.0
    log_p = -0.5 * log_abs_determinant(q) + math.log(haf.real) - _log_factorial_product(pat)
    return math.exp(log_p)


def pattern_probability_squeezed(t, params, pattern, max_dim: int | None = None) -> float:
    """Probability of ``pattern`` for squeezed vacua sent through ``t``."""
    t, params = as_unitary(t), as_squeeze(params)
    pat = as_pattern(pattern, params.modes)
    if sum(pat) % 2:
        return 0.0
    idx = pattern_indices(pat)
    b_s = submatrix_by_multiset(b_matrix(t, params), idx, idx)
    haf = hafnian(b_s, max_dim=max_dim)
    weight = abs(haf) ** 2
    if weight == 0:
        return 0.0
    log_pref = prefactor_log(params)
    prefactor = math.exp(log_pref)
    if prefactor >= DEFAULT_TOLERANCES.prefactor_underflow:
        return prefactor * weight / math.prod(math.factorial(n) for n in pat)
    return math.exp(log_pref + 2 * math.log(abs(haf)) - _log_factorial_product(pat))


def enumerate_collision_free_patterns(modes: int, photons: int) -> list[tuple]:
    """All ``C(M, N)`` patterns with at most one photon per mode, lexicographically sorted."""
    if photons < 0 or photons > modes:
        raise DomainError(f"cannot place {photons} photons in {modes} modes without collisions")
    out = []
    for occupied in itertools.combinations(range(modes), photons):
        pat = [0] * modes
        for j in occupied:
            pat[j] = 1
        out.append(tuple(pat))
    out.sort()
    return out


def _compositions(modes, total, cap):
    if modes == 1:
        if total <= cap:
            yield (total,)
        return
    for first in range(min(total, cap) + 1):
        for rest in _compositions(modes - 1, total - first, cap):
            yield (first,) + rest


def enumerate_bounded_patterns(modes: int, max_total: int, max_per_mode: int | None = None) -> list[tuple]:
    """All patterns with ``sum(n) <= max_total`` and every ``n_j <= max_per_mode``.

    Ordered by total photon number, then lexicographically.
    """
    if modes < 1:
        raise DimensionError("need at least one mode")
    if max_total < 0 or (max_per_mode is not None and max_per_mode < 0):
        raise DomainError("bounds must be non-negative")
    cap = max_total if max_per_mode is None else max_per_mode
    out = []
    for total in range(max_total + 1):
        out.extend(_compositions(modes, total, cap))
    return out


# photon-number statistics ---------------------------------------------------


@dataclass(frozen=True)
class PpeDistributionSpec:
    """``squeezers`` equal squeezers with parameter ``squeeze``; ``pairs`` is
    the photon-pair count ``N`` (``2N`` photons) being evaluated."""

    squeezers: int
    squeeze: float
    pairs: int = 0

    def __post_init__(self):
        if self.squeezers < 1:
            raise DomainError("need at least one squeezer")
        if not (self.squeeze >= 0 and math.isfinite(self.squeeze)):
            raise DomainError(f"squeeze must be finite and >= 0, got {self.squeeze}")
        if self.pairs < 0:
            raise DomainError("pair count must be >= 0")


def _log_gen_binom(top: float, k: int) -> float:
    """log of the generalized binomial coefficient C(top, k) for top > k - 1."""
    return math.lgamma(top + 1) - math.lgamma(k + 1) - math.lgamma(top - k + 1)


def _ppe_pmf(k_sq: int, r: float, n: int) -> float:
    if r == 0:
        return 1.0 if n == 0 else 0.0
    t2 = math.tanh(r) ** 2
    log_sech = -(r + math.log1p(math.exp(-2 * r)) - math.log(2.0))
    return math.exp(_log_gen_binom(k_sq / 2 + n - 1, n) + k_sq * log_sech + n * math.log(t2))


def ppe_distribution(spec: PpeDistributionSpec) -> float:
    """Probability that ``K`` equal squeezers emit exactly ``N`` photon pairs,
    ``C(K/2 + N - 1, N) sech^K(r) tanh^(2N)(r)``."""
    return _ppe_pmf(spec.squeezers, spec.squeeze, spec.pairs)


def ppe_tail(squeezers: int, squeeze: float, max_pairs: int, rtol: float = 1e-17) -> float:
    """``sum_{N > max_pairs} P_K(N)``, summed term by term until negligible."""
    if squeeze == 0:
        return 0.0
    t2 = math.tanh(squeeze) ** 2
    total = 0.0
    n = max_pairs + 1
    while True:
        term = _ppe_pmf(squeezers, squeeze, n)
        total += term
        # every later term ratio is bounded by max(current ratio, tanh^2 r)
        q = max((squeezers / 2 + n) * t2 / (n + 1), t2)
        if term == 0 or (q < 1 and term * q / (1 - q) <= rtol * total):
            return total
        n += 1


def total_pair_distribution(params, max_pairs: int) -> np.ndarray:
    """Photon-pair-number law for arbitrary squeezers, ``N = 0..max_pairs``.

    The pair counts of independent squeezers add, so the law is the
    convolution of single-squeezer laws. Equal squeezers reproduce the
    negative binomial exactly.
    """
    r = as_squeeze(params).r
    dist = np.zeros(max_pairs + 1)
    dist[0] = 1.0
    for rj in r[r > 0]:
        single = np.array([_ppe_pmf(1, float(rj), n) for n in range(max_pairs + 1)])
        dist = np.convolve(dist, single)[: max_pairs + 1]
    return dist


def mean_and_modal(spec: PpeDistributionSpec) -> tuple[float, float]:
    """Mean and modal total photon numbers, ``K sinh^2 r`` and ``(K - 1) sinh^2 r``."""
    s2 = math.sinh(spec.squeeze) ** 2
    return spec.squeezers * s2, (spec.squeezers - 1) * s2


def pfbs_probability(squeezers: int, photons: int, squeeze: float) -> float:
    """Probability that exactly ``N`` of ``K`` pair sources fire once and the rest stay empty,
    ``C(K, N) sech^(2K)(r) tanh^(2N)(r)``."""
    if photons < 0 or squeezers < 0:
        raise DomainError("counts must be non-negative")
    if photons > squeezers:
        return 0.0
    if squeeze == 0:
        return 1.0 if photons == 0 else 0.0
    return math.comb(squeezers, photons) * math.cosh(squeeze) ** (-2 * squeezers) * math.tanh(squeeze) ** (2 * photons)


def generation_ratio(squeezers: int, photons: int) -> tuple[float, float]:
    """Heralded-to-Gaussian generation probability ratio.

    Returns ``(C(K, N) / C(K + N - 1, N), ((K - N) / (K - 1))^N)``.
    """
    k, n = int(squeezers), int(photons)
    if n < 1 or k <= n:
        raise DomainError(f"need K > N >= 1, got K={k}, N={n}")
    exact = float(Fraction(math.comb(k, n), math.comb(k + n - 1, n)))
    asymptotic = ((k - n) / (k - 1)) ** n
    return exact, asymptotic


def sampling_space_sizes(photons: int) -> tuple[int, int]:
    """Number of outcomes for N photons in N^2 modes: (Gaussian, scattershot)."""
    if photons < 1:
        raise DomainError("need at least one photon")
    gbs = math.comb(photons * photons, photons)
    return gbs, gbs * gbs
