"""Click probability and conditional state of inconclusive photon subtraction.

The input squeezed vacuum is mixed with vacuum on a beam splitter of
transmissivity ``tau``; the reflected mode hits an on/off detector of
efficiency ``eta``. A click leaves the transmitted mode in a state whose
characteristic function is the difference of two zero-mean Gaussians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from photonsub.errors import InvalidParameterError, NoClickError
from photonsub.gaussian import (
    ComplexGaussParams,
    CovMat2,
    TwoModeCov,
    _check_real,
    apply_bs,
    cartesian_to_complex,
    check_tau,
    squeezed_vacuum_cov,
    vacuum_cov,
)

_DET_FLOOR = 1e-300


@dataclass(frozen=True)
class IPSParams:
    """Input squeezing ``r``, transmissivity ``tau`` and detector efficiency ``eta``."""

    r: float
    tau: float
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "r", _check_real("r", self.r))
        object.__setattr__(self, "tau", check_tau(self.tau))
        eta = _check_real("eta", self.eta)
        if not 0.0 <= eta <= 1.0:
            raise InvalidParameterError(f"eta must lie in [0, 1], got {eta}")
        object.__setattr__(self, "eta", eta)

    @property
    def tau_eff(self) -> float:
        return tau_eff(self.tau, self.eta)

    @property
    def can_click(self) -> bool:
        return self.r != 0.0 and self.tau < 1.0 and self.eta > 0.0


@dataclass(frozen=True)
class ConditionalState:
    """Conditional state as a weighted sum of Gaussian characteristic functions.

    ``components`` holds ``(weight, ComplexGaussParams)`` pairs: the
    unconditioned reduced state with weight ``1/p_on`` and the no-click
    conditioned state with weight ``-p_off/p_on``.
    """

    params: IPSParams
    p_on: float
    p_off: float
    sigma1: CovMat2
    sigma2: CovMat2
    # sigma1 - sigma2, kept separately since it vanishes as tau -> 1
    correction: np.ndarray
    components: tuple[tuple[float, ComplexGaussParams], ...]

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self.components)


def sigma_M(eta: float) -> CovMat2:
    """Detector matrix ``(2 - eta)/(2 eta)`` times the identity."""
    eta = _check_real("eta", eta)
    if not 0.0 < eta <= 1.0:
        raise InvalidParameterError(f"eta must lie in (0, 1] for the detector matrix, got {eta}")
    v = (2.0 - eta) / (2.0 * eta)
    return CovMat2(v, v, 0.0, measurement=True)


def tau_eff(tau: float, eta: float) -> float:
    return 1.0 - eta * (1.0 - tau)


def _two_mode(params: IPSParams) -> TwoModeCov:
    return apply_bs(squeezed_vacuum_cov(params.r), vacuum_cov(), params.tau)


def click_probability(params: IPSParams) -> float:
    """Probability that the on/off detector clicks (closed form)."""
    loss = params.eta * (1.0 - params.tau)  # 1 - tau_eff without cancellation
    x = loss * (2.0 - loss) * math.sinh(params.r) ** 2
    # 1 - (1 + x)^(-1/2) without cancellation for tiny x
    return -math.expm1(-0.5 * math.log1p(x))


def click_probability_blocks(params: IPSParams) -> float:
    """Click probability from the beam-splitter output blocks.

    Independent route to :func:`click_probability`:
    ``1 - 1/(eta sqrt(Det(B + sigma_M)))``.
    """
    if params.eta == 0.0:
        return 0.0
    blocks = _two_mode(params)
    det = np.linalg.det(blocks.B.matrix + sigma_M(params.eta).matrix)
    return 1.0 - 1.0 / (params.eta * math.sqrt(det))


def click_probability_first_order(params: IPSParams) -> float:
    """Leading term ``(1 - tau_eff) sinh^2 r`` of the click probability."""
    return params.eta * (1.0 - params.tau) * math.sinh(params.r) ** 2


def _inv2(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < _DET_FLOOR:
        raise InvalidParameterError("singular matrix in conditioning")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det


def conditional_state(params: IPSParams) -> ConditionalState:
    """Build the state of the transmitted mode given a detector click.

    Raises:
        NoClickError: if ``r = 0``, ``tau = 1`` or ``eta = 0``.
    """
    if not params.can_click:
        raise NoClickError(
            f"detector never clicks for r={params.r}, tau={params.tau}, eta={params.eta}"
        )
    blocks = _two_mode(params)
    BM = blocks.B.matrix + sigma_M(params.eta).matrix
    p_on = click_probability(params)
    if p_on <= 0.0:
        raise NoClickError(f"click probability underflows for {params}")
    # 1 - p_on equals 1/(eta sqrt(Det(B + sigma_M))); writing the second weight
    # as 1 - w1 keeps chi(0) = 1 to rounding even when p_on is tiny
    w1 = 1.0 / p_on
    w2 = 1.0 - w1

    C = blocks.C
    correction = C @ _inv2(BM) @ C.T
    correction = 0.5 * (correction + correction.T)
    s2 = blocks.A.matrix - correction
    sigma1 = blocks.A
    sigma2 = CovMat2.from_matrix(0.5 * (s2 + s2.T))

    components = (
        (w1, cartesian_to_complex(sigma1)),
        (w2, cartesian_to_complex(sigma2)),
    )
    return ConditionalState(
        params=params,
        p_on=p_on,
        p_off=-w2 * p_on,
        sigma1=sigma1,
        sigma2=sigma2,
        correction=correction,
        components=components,
    )
