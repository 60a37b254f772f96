"""Figures of merit of the conditional state: fidelity, purity, nonclassical depth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from photonsub.conditioning import IPSParams, conditional_state
from photonsub.errors import InvalidParameterError
from photonsub.gaussian import ComplexGaussParams, _check_real, check_tau
from photonsub.quasiprob import (
    PhaseSpaceGrid,
    SqueezedFockParams,
    max_normalizable_s,
    quasiprob_s,
)


@dataclass(frozen=True)
class FidelityReport:
    value: float
    F1: float
    F2: float
    p_on: float


@dataclass(frozen=True)
class NonclassicalityReport:
    s_bar: float
    depth: float
    tau_star: float


def _overlap_with_target(g: ComplexGaussParams, target: SqueezedFockParams) -> float:
    """Overlap of one Gaussian component with S(z)|1><1|S(z)^dag."""
    A0, B0 = target.A0, target.B0
    Ak, Bk = g.A, g.B.real
    num = Ak * Ak - A0 * A0 - 4.0 * (Bk * Bk - B0 * B0)
    den = (A0 + Ak) ** 2 - 4.0 * (B0 + Bk) ** 2
    return num / den**1.5


def _det2(m) -> float:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _adj2(m) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def fidelity(params: IPSParams, z: float) -> FidelityReport:
    """Overlap ``Tr[rho_target rho_out]`` with the squeezed single-photon state S(z)|1>.

    ``value = (F1 - q F2)/p`` with ``q = 1 - p``, evaluated as
    ``(F1 - F2)/p + F2`` where ``F1 - F2`` is expanded in the correction
    ``S1 - S2`` so the result stays accurate for vanishing click probability.
    """
    state = conditional_state(params)
    target = SqueezedFockParams(z)
    (_, g1), (_, g2) = state.components
    F1 = _overlap_with_target(g1, target)
    F2 = _overlap_with_target(g2, target)

    # F_k = (Det S_k - 1/4) / Det(S_k + S_z)^(3/2), S_z the target's Gaussian part
    S2 = state.sigma2.matrix
    D = state.correction
    N = S2 + np.array([[target.A0 - 2 * target.B0, 0.0], [0.0, target.A0 + 2 * target.B0]])
    num_diff = float(np.trace(_adj2(S2) @ D)) + _det2(D)
    K = np.linalg.solve(N, D)
    den2 = _det2(N) ** -1.5
    den_ratio_m1 = math.expm1(-1.5 * math.log1p(float(np.trace(K)) + _det2(K)))
    den1 = den2 * (1.0 + den_ratio_m1)
    num2 = F2 / den2
    diff = num_diff * den1 + num2 * den2 * den_ratio_m1
    return FidelityReport(value=diff / state.p_on + F2, F1=F1, F2=F2, p_on=state.p_on)


def fidelity_first_order(z: float, r: float, tau: float) -> float:
    """First-order expansion of the fidelity in ``1 - tau`` for a perfect detector.

    ``F = 1/d^3 - k (1 - tau)`` with ``d = cosh(r - z)`` and
    ``k = (9 cosh(r + z) - 3 cosh(3r - z)) / (8 d^4) - 1 / (4 d^3)``;
    at ``z = r`` the slope is ``(3 cosh 2r - 1)/4``.
    """
    d = math.cosh(r - z)
    slope = (9.0 * math.cosh(r + z) - 3.0 * math.cosh(3.0 * r - z)) / (8.0 * d**4) - 0.25 / d**3
    return 1.0 / d**3 - slope * (1.0 - tau)


def purity(params: IPSParams) -> float:
    """``Tr[rho_out^2]`` from the two-Gaussian decomposition.

    With ``P_jk = 1/sqrt(Det(S_j + S_k))`` the overlap of the Gaussian
    components (``S_1``, ``S_2``), ``p = p_on`` and ``q = 1 - p``::

        mu = (P_11 + q^2 P_22 - 2 q P_12) / p^2

    Near ``tau -> 1`` both ``p`` and ``S_1 - S_2`` vanish and the three
    terms cancel to O(p^2), so the sum is rewritten around ``P_22`` using
    ``Det(2 S_2 + t D) = Det(2 S_2) (1 + t tr K + t^2 det K)`` with
    ``D = S_1 - S_2`` and ``K = (2 S_2)^{-1} D``.
    """
    state = conditional_state(params)
    p = state.p_on
    M = 2.0 * state.sigma2.matrix
    K = np.linalg.solve(M, state.correction)
    c1 = np.trace(K)
    c2 = np.linalg.det(K)

    P22 = 1.0 / math.sqrt(np.linalg.det(M))
    h1 = math.expm1(-0.5 * math.log1p(c1 + c2))
    return P22 * (_second_difference(c1, c2) / (p * p) + 2.0 * h1 / p + 1.0)


def _second_difference(c1: float, c2: float) -> float:
    """``g(2) - 2 g(1) + g(0)`` for ``g(t) = (1 + t c1 + t^2 c2)^(-1/2)``."""
    u1, u2 = c1 + c2, 2.0 * c1 + 4.0 * c2
    if abs(u2) > 0.1:
        return (1.0 + u2) ** -0.5 - 2.0 * (1.0 + u1) ** -0.5 + 1.0
    # binomial series; the order-1 term u2 - 2 u1 = 2 c2 is taken exactly
    coeff = -0.5
    total = coeff * 2.0 * c2
    p1, p2 = u1, u2
    for n in range(2, 40):
        coeff *= (-0.5 - (n - 1)) / n
        p1 *= u1
        p2 *= u2
        term = coeff * (p2 - 2.0 * p1)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def _check_eta(eta):
    eta = _check_real("eta", eta)
    if not 0.0 <= eta <= 1.0:
        raise InvalidParameterError(f"eta must lie in [0, 1], got {eta}")
    return eta


def s_bar(tau: float, eta: float) -> float:
    """Largest ordering parameter for which the s-ordered function stays non-negative."""
    tau, eta = check_tau(tau), _check_eta(eta)
    return (2.0 - eta - (4.0 - eta) * tau) / (2.0 - (1.0 - tau) * eta)


def wigner_positivity_threshold(eta: float) -> float:
    """Transmissivity below which the Wigner function is non-negative."""
    eta = _check_eta(eta)
    return (2.0 - eta) / (4.0 - eta)


def nonclassical_depth(tau: float, eta: float) -> NonclassicalityReport:
    tau, eta = check_tau(tau), _check_eta(eta)
    depth = 2.0 * tau / (2.0 - (1.0 - tau) * eta)
    return NonclassicalityReport(
        s_bar=s_bar(tau, eta),
        depth=depth,
        tau_star=wigner_positivity_threshold(eta),
    )


def s_bar_numeric(state, grid: PhaseSpaceGrid | None = None, s_min: float = -3.0,
                  xtol: float = 1e-10) -> float:
    """Locate the positivity boundary in s by bisection.

    With ``grid=None`` only the origin is checked; otherwise the minimum over
    the grid is used.
    """
    if grid is None:
        points = np.zeros(1, dtype=complex)
    else:
        points = grid.alphas().ravel()

    def lowest(s):
        return float(np.min(quasiprob_s(state, points, s)))

    s_max = max_normalizable_s(state)
    hi = s_max - 1e-9 * max(1.0, abs(s_max))
    if lowest(s_min) < 0:
        raise ValueError(f"quasi-probability already negative at s = {s_min}")
    if lowest(hi) >= 0:
        return hi
    return bisect(lowest, s_min, hi, xtol=xtol)
