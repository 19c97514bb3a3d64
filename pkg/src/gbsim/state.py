"""Covariance matrices of squeezed vacua sent through linear interferometers.

Ordering is ``(a_1 ... a_M, a_1^dag ... a_M^dag)`` and the vacuum covariance is
``I / 2``. Displacements are always zero.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import (
    DimensionError,
    DomainError,
    InvalidStateError,
    RankDeficiencyWarning,
    SingularMatrixError,
)
from .linalg import as_matrix, direct_sum, inverse, is_hermitian_positive_definite


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Zero-mean Gaussian state given by its ``2M x 2M`` covariance matrix."""

    modes: int
    sigma: np.ndarray

    def __post_init__(self):
        sigma = as_matrix(self.sigma, square=True)
        if self.modes < 1 or sigma.shape[0] != 2 * self.modes:
            raise DimensionError(f"covariance of shape {sigma.shape} does not match {self.modes} modes")
        if np.max(np.abs(sigma - sigma.conj().T)) > DEFAULT_TOLERANCES.hermitian:
            raise InvalidStateError("covariance matrix is not Hermitian")
        object.__setattr__(self, "sigma", _frozen(sigma))


@dataclass(frozen=True, eq=False)
class SqueezeParams:
    """Real, non-negative squeezing parameter per input mode."""

    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=np.float64, copy=True).reshape(-1)
        if r.size == 0:
            raise DimensionError("at least one mode is required")
        if not np.all(np.isfinite(r)) or np.any(r < 0):
            raise DomainError(f"squeezing parameters must be finite and >= 0, got {r.tolist()}")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @property
    def modes(self) -> int:
        return int(self.r.size)

    @property
    def squeezers(self) -> int:
        """Number of nonzero squeezers, the rank of the sampling matrix."""
        return int(np.count_nonzero(self.r))


@dataclass(frozen=True, eq=False)
class InterferometerUnitary:
    t: np.ndarray

    def __post_init__(self):
        t = as_matrix(self.t, square=True)
        if t.shape[0] == 0:
            raise DimensionError("interferometer needs at least one mode")
        residual = np.max(np.abs(t.conj().T @ t - np.eye(t.shape[0])))
        if residual > DEFAULT_TOLERANCES.unitarity:
            raise DomainError(f"interferometer is not unitary (residual {residual:.3e})")
        object.__setattr__(self, "t", _frozen(t))

    @property
    def modes(self) -> int:
        return int(self.t.shape[0])


def as_squeeze(params) -> SqueezeParams:
    return params if isinstance(params, SqueezeParams) else SqueezeParams(params)


def as_unitary(t) -> InterferometerUnitary:
    return t if isinstance(t, InterferometerUnitary) else InterferometerUnitary(t)


def _check_modes(t: InterferometerUnitary, params: SqueezeParams):
    if t.modes != params.modes:
        raise DimensionError(f"unitary acts on {t.modes} modes but {params.modes} squeezing parameters given")


def vacuum(modes: int) -> GaussianState:
    if modes < 1:
        raise DimensionError("vacuum needs at least one mode")
    return GaussianState(modes, np.eye(2 * modes) / 2)


def squeeze_matrix(params) -> np.ndarray:
    """Block matrix ``[[cosh r, sinh r], [sinh r, cosh r]]`` with diagonal blocks."""
    r = as_squeeze(params).r
    c, s = np.diag(np.cosh(r)), np.diag(np.sinh(r))
    return np.block([[c, s], [s, c]]).astype(np.complex128)


def output_state(t, params) -> GaussianState:
    """Covariance after squeezing each input mode and applying ``t``.

    ``sigma = 1/2 diag(T, T*) S S^dag diag(T^dag, T^T)``.
    """
    t, params = as_unitary(t), as_squeeze(params)
    _check_modes(t, params)
    u = direct_sum(t.t, t.t.conj())
    s = squeeze_matrix(params)
    sigma = 0.5 * u @ s @ s.conj().T @ u.conj().T
    # remove rounding-level anti-Hermitian parts before validation
    sigma = 0.5 * (sigma + sigma.conj().T)
    return GaussianState(params.modes, sigma)


def sigma_q(state: GaussianState) -> np.ndarray:
    """Q-function covariance ``sigma + I/2``; raises if it is not positive definite."""
    q = state.sigma + np.eye(2 * state.modes) / 2
    if not is_hermitian_positive_definite(q):
        raise InvalidStateError("sigma + I/2 is not positive definite")
    return q


def sampling_matrix_a(state: GaussianState) -> np.ndarray:
    """Sampling matrix ``A = (I - sigma_Q^-1) X`` with ``X`` the swap of the two mode blocks.

    For squeezed vacua this is ``B (+) B*`` with ``B`` from :func:`b_matrix`.
    Swapping rows instead of columns gives the complex conjugate ``B* (+) B``;
    hafnians of its submatrices are conjugated too, so probabilities agree.
    """
    m = state.modes
    try:
        q_inv = inverse(sigma_q(state))
    except SingularMatrixError as exc:
        raise InvalidStateError(f"sigma_Q is singular: {exc}") from exc
    x = np.block([[np.zeros((m, m)), np.eye(m)], [np.eye(m), np.zeros((m, m))]])
    return (np.eye(2 * m) - q_inv) @ x


def b_matrix(t, params) -> np.ndarray:
    """``B = T diag(tanh r) T^T``, symmetric with rank equal to the number of squeezers."""
    t, params = as_unitary(t), as_squeeze(params)
    _check_modes(t, params)
    b = (t.t * np.tanh(params.r)) @ t.t.T
    return 0.5 * (b + b.T)


def reduce_modes(state: GaussianState, keep) -> GaussianState:
    """Trace out every mode not listed in ``keep`` (order of ``keep`` is kept)."""
    keep = [int(k) for k in keep]
    if not keep:
        raise DomainError("at least one mode must be kept")
    if len(set(keep)) != len(keep):
        raise DomainError(f"duplicate modes in {keep}")
    if min(keep) < 0 or max(keep) >= state.modes:
        raise IndexError(f"mode index out of range for {state.modes} modes: {keep}")
    idx = np.array(keep + [k + state.modes for k in keep])
    return GaussianState(len(keep), state.sigma[np.ix_(idx, idx)])


def prefactor_log(params) -> float:
    """``log |sigma_Q|^(-1/2) = -sum_j log cosh r_j``, valid for any interferometer."""
    r = as_squeeze(params).r
    # log cosh r = r + log1p(exp(-2r)) - log 2, stable for large r
    return -float(np.sum(r + np.log1p(np.exp(-2 * r)) - np.log(2.0)))


def warn_if_rank_deficient(params, photons: int) -> bool:
    """Emit a RankDeficiencyWarning when ``photons`` exceeds the number of squeezers.

    Diagnostic only; the probabilities are still exact. Returns True when the
    warning fired.
    """
    k = as_squeeze(params).squeezers
    if photons > k:
        warnings.warn(
            f"{photons} photons requested but B has rank {k} (number of nonzero squeezers)",
            RankDeficiencyWarning,
            stacklevel=3,
        )
        return True
    return False
