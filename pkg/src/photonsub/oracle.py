"""Brute-force verification in a truncated number basis.

Nothing here reuses the Gaussian pipeline: states are built by exponentiating
ladder-operator generators, the beam splitter acts sector by sector in total
photon number, and the on/off detector is applied as a diagonal POVM.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from photonsub.conditioning import IPSParams
from photonsub.errors import ConvergenceError, InvalidParameterError, NoClickError


@dataclass(frozen=True)
class OracleConfig:
    cutoff: int = 40
    convergence_tol: float = 1e-8
    max_cutoff: int = 200
    step: int = 20

    def __post_init__(self):
        if self.cutoff < 1 or self.cutoff > self.max_cutoff:
            raise InvalidParameterError("need 1 <= cutoff <= max_cutoff")
        # squeezed vacuum has even support only, so an odd step can leave the
        # state unchanged and fake convergence
        if self.step < 2 or self.step % 2:
            raise InvalidParameterError("step must be a positive even integer")

    @classmethod
    def for_squeezing(cls, r: float, **kwargs) -> OracleConfig:
        kwargs.setdefault("cutoff", 40 if abs(r) <= 1.0 else 80)
        return cls(**kwargs)


@dataclass(frozen=True)
class FockKet:
    cutoff: int
    amplitudes: np.ndarray
    leakage: float = 0.0

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.cutoff + 1,):
            raise InvalidParameterError("amplitude vector length must be cutoff + 1")
        if abs(np.vdot(amps, amps).real - 1.0) > 1e-10:
            raise InvalidParameterError("ket is not normalized")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def projector(self) -> FockDensity:
        return FockDensity(self.cutoff, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class FockDensity:
    cutoff: int
    matrix: np.ndarray
    # input weight lost to truncation; bounds the neglected POVM tail
    leakage: float = 0.0

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (self.cutoff + 1, self.cutoff + 1):
            raise InvalidParameterError("density matrix shape does not match cutoff")
        if np.abs(m - m.conj().T).max() > 1e-12:
            raise InvalidParameterError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise InvalidParameterError("density matrix trace is not 1")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise InvalidParameterError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def annihilation_matrix(N: int) -> np.ndarray:
    if N < 1:
        raise InvalidParameterError("cutoff must be at least 1")
    return np.diag(np.sqrt(np.arange(1, N + 1, dtype=float)), k=1)


def fock_ket(n: int, N: int) -> FockKet:
    amps = np.zeros(N + 1, dtype=complex)
    amps[n] = 1.0
    return FockKet(N, amps)


def _expm_antihermitian(G: np.ndarray) -> np.ndarray:
    """exp(G) for anti-Hermitian G via the eigendecomposition of iG."""
    w, V = np.linalg.eigh(1j * G)
    return (V * np.exp(-1j * w)) @ V.conj().T


def squeeze_ket(xi: float, base: FockKet, N: int | None = None, pad: int | None = None) -> FockKet:
    """Apply exp(xi (a^dag^2 - a^2)/2) to ``base``.

    The exponential is taken in a padded space of dimension ``N + pad + 1``;
    weight beyond ``N`` is discarded and reported as ``leakage``.
    """
    N = base.cutoff if N is None else N
    pad = max(N, 40) if pad is None else pad
    M = N + pad
    a = annihilation_matrix(M)
    ad = a.T
    G = 0.5 * xi * (ad @ ad - a @ a)
    psi = np.zeros(M + 1, dtype=complex)
    n = min(base.cutoff, M)
    psi[: n + 1] = base.amplitudes[: n + 1]
    out = _expm_antihermitian(G) @ psi
    leakage = float(np.vdot(out[N + 1 :], out[N + 1 :]).real)
    kept = out[: N + 1]
    kept = kept / np.linalg.norm(kept)
    return FockKet(N, kept, leakage)


def _bs_sector(theta: float, n: int, N: int) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Beam-splitter unitary restricted to total photon number ``n``.

    Generator ``theta (a^dag b - a b^dag)`` on basis states ``|j, n - j>``
    with both occupations at most ``N``.
    """
    basis = [(j, n - j) for j in range(max(0, n - N), min(n, N) + 1)]
    d = len(basis)
    G = np.zeros((d, d))
    for i, (j, k) in enumerate(basis[:-1]):
        # a^dag b |j, k> = sqrt((j + 1) k) |j + 1, k - 1>
        amp = theta * math.sqrt((j + 1) * k)
        G[i + 1, i] = amp
        G[i, i + 1] = -amp
    return basis, _expm_antihermitian(G)


def _theta(tau: float, sign: int) -> float:
    if not 0.0 <= tau <= 1.0:
        raise InvalidParameterError(f"tau must lie in [0, 1], got {tau}")
    if sign not in (1, -1):
        raise InvalidParameterError("sign must be +1 or -1")
    return sign * math.acos(math.sqrt(tau))


def bs_unitary(tau: float, N: int, sign: int = 1) -> np.ndarray:
    """exp(theta (a^dag b - a b^dag)) with cos(theta) = sqrt(tau).

    Two-mode index is ``j * (N + 1) + k`` for ``|j>_a |k>_b``.
    """
    theta = _theta(tau, sign)
    D = N + 1
    U = np.zeros((D * D, D * D), dtype=complex)
    for n in range(2 * N + 1):
        basis, block = _bs_sector(theta, n, N)
        idx = [j * D + k for j, k in basis]
        U[np.ix_(idx, idx)] = block
    return U


def _conditional_unnormalized(psi: np.ndarray, tau: float, eta: float, sign: int) -> np.ndarray:
    N = psi.size - 1
    theta = _theta(tau, sign)
    # Phi[j, k]: amplitude of |j>_a |k>_b after the beam splitter
    Phi = np.zeros((N + 1, N + 1), dtype=complex)
    for n in range(N + 1):
        if psi[n] == 0:
            continue
        basis, block = _bs_sector(theta, n, N)
        col = block[:, -1]  # input |n, 0> is the last basis state
        for (j, k), amp in zip(basis, col):
            Phi[j, k] += psi[n] * amp
    k = np.arange(N + 1)
    on = 1.0 - (1.0 - eta) ** k
    return (Phi * on) @ Phi.conj().T


def conditional_density_at_cutoff(params: IPSParams, N: int, sign: int = 1) -> tuple[float, FockDensity]:
    """Click probability and conditional state at a fixed cutoff ``N``."""
    ket = squeeze_ket(params.r, fock_ket(0, N))
    unnorm = _conditional_unnormalized(ket.amplitudes, params.tau, params.eta, sign)
    p_on = float(np.trace(unnorm).real)
    if p_on <= 0:
        raise NoClickError("click probability vanishes in the truncated space")
    rho = unnorm / p_on
    return p_on, FockDensity(N, 0.5 * (rho + rho.conj().T), ket.leakage)


def ips_conditional_density(params: IPSParams, cfg: OracleConfig | None = None,
                            sign: int = 1) -> tuple[float, FockDensity]:
    """Click probability and conditional state, raising the cutoff until converged.

    Convergence requires the click probability and every element of the
    conditional density matrix to change by less than ``cfg.convergence_tol``
    between successive cutoffs, with the truncated input weight below the
    same tolerance.

    Raises:
        NoClickError: if the detector cannot click.
        ConvergenceError: if ``cfg.max_cutoff`` is reached first.
    """
    cfg = cfg or OracleConfig.for_squeezing(params.r)
    if params.r == 0 or params.tau == 1 or params.eta == 0:
        raise NoClickError("detector never clicks for these parameters")

    prev = None
    N = cfg.cutoff
    while N <= cfg.max_cutoff:
        p_on, rho = conditional_density_at_cutoff(params, N, sign)
        if prev is not None:
            p_prev, m_prev = prev
            m = rho.matrix
            n0 = m_prev.shape[0]
            drho = max(np.abs(m[:n0, :n0] - m_prev).max(),
                       np.abs(m[n0:, :]).max(), np.abs(m[:, n0:]).max())
            tol = cfg.convergence_tol
            if abs(p_on - p_prev) < tol and drho < tol and rho.leakage < tol:
                return p_on, rho
        prev = (p_on, rho.matrix)
        N += cfg.step
    raise ConvergenceError(
        f"oracle did not converge up to cutoff {cfg.max_cutoff} for {params}"
    )


def oracle_fidelity(rho: FockDensity, ket: FockKet) -> float:
    if rho.cutoff != ket.cutoff:
        raise InvalidParameterError("cutoff mismatch between state and target")
    v = ket.amplitudes
    return float(np.vdot(v, rho.matrix @ v).real)


def oracle_purity(rho: FockDensity) -> float:
    m = rho.matrix
    return float(np.sum(np.abs(m) ** 2))


def displacement_matrix(alpha: complex, rows: int, cols: int) -> np.ndarray:
    """Exact elements <m|D(alpha)|n> for m < rows, n < cols (Laguerre form)."""
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    m = np.arange(rows)[:, None]
    n = np.arange(cols)[None, :]
    lo = np.minimum(m, n)
    hi = np.maximum(m, n)
    diff = hi - lo
    log_ratio = 0.5 * (gammaln(lo + 1) - gammaln(hi + 1))
    lag = eval_genlaguerre(lo, diff, x)
    phase = np.where(m >= n, alpha**diff, (-alpha.conjugate()) ** diff)
    return np.exp(log_ratio - 0.5 * x) * phase * lag


def _column_cutoff(N: int, alpha: complex) -> int:
    amp = abs(alpha)
    return int(math.ceil(N + amp * amp + 10.0 * amp * math.sqrt(2 * N + 1) + 20))


def oracle_char(rho: FockDensity, lam: complex) -> complex:
    """Tr[rho D(lam)]."""
    D = displacement_matrix(lam, rho.cutoff + 1, rho.cutoff + 1)
    return complex(np.sum(rho.matrix.T * D))


def oracle_wigner(rho: FockDensity, alpha: complex) -> float:
    """(2/pi) Tr[rho D(alpha) P D(alpha)^dag] with P the parity operator."""
    K = _column_cutoff(rho.cutoff, alpha)
    D = displacement_matrix(alpha, rho.cutoff + 1, K + 1)
    diag = np.einsum("nk,nm,mk->k", D.conj(), rho.matrix, D)
    parity = (-1.0) ** np.arange(K + 1)
    return float(2.0 / math.pi * np.sum(parity * diag).real)


@dataclass(frozen=True)
class OracleResult:
    p_on: float
    fidelity: float
    purity: float
    cutoff: int


def oracle_metrics(params: IPSParams, z: float | None = None, cfg: OracleConfig | None = None,
                   sign: int = 1) -> OracleResult:
    """Click probability, fidelity to S(z)|1> (default ``z = r``) and purity."""
    p_on, rho = ips_conditional_density(params, cfg, sign=sign)
    z = params.r if z is None else z
    target = squeeze_ket(z, fock_ket(1, rho.cutoff))
    return OracleResult(
        p_on=p_on,
        fidelity=oracle_fidelity(rho, target),
        purity=oracle_purity(rho),
        cutoff=rho.cutoff,
    )
