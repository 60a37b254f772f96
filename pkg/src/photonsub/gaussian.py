"""Single- and two-mode zero-mean Gaussian states.

Quadratures are x = (a + a^dag)/sqrt(2) and p = (a - a^dag)/(i sqrt(2)), so the
vacuum covariance matrix is 1/2 times the identity. A covariance matrix
``sigma`` corresponds to the characteristic function

    chi(lambda) = exp(-A |lambda|^2 - B lambda^2 - B^* lambda^*^2)

with ``A = (a + b)/2`` and ``B = (b - a + 2ic)/4``, where ``lambda`` is the
argument of the displacement operator D(lambda) = exp(lambda a^dag - lambda^* a).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from photonsub.errors import InvalidParameterError

# Slack for the Det >= 1/4 uncertainty check on states.
_PHYSICAL_SLACK = 1e-12


def _check_real(name, value):
    if isinstance(value, complex) or np.iscomplexobj(value):
        raise InvalidParameterError(f"{name} must be real, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}")
    return value


def check_tau(tau):
    tau = _check_real("tau", tau)
    if not 0.0 <= tau <= 1.0:
        raise InvalidParameterError(f"tau must lie in [0, 1], got {tau}")
    return tau


@dataclass(frozen=True)
class CovMat2:
    """Symmetric 2x2 covariance matrix ``[[a, c], [c, b]]``.

    ``measurement=True`` marks POVM matrices such as the detector matrix,
    which are positive definite but need not satisfy the uncertainty bound.
    """

    a: float
    b: float
    c: float = 0.0
    measurement: bool = False

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _check_real(name, getattr(self, name)))
        if self.a <= 0 or self.b <= 0 or self.det <= 0:
            raise InvalidParameterError(f"covariance matrix is not positive definite: {self}")
        if not self.measurement and self.det < 0.25 - _PHYSICAL_SLACK:
            raise InvalidParameterError(
                f"covariance matrix violates the uncertainty bound (Det = {self.det} < 1/4)"
            )

    @property
    def det(self) -> float:
        return self.a * self.b - self.c * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.c], [self.c, self.b]])

    @classmethod
    def from_matrix(cls, m, measurement=False) -> CovMat2:
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise InvalidParameterError(f"expected a 2x2 matrix, got shape {m.shape}")
        if abs(m[0, 1] - m[1, 0]) > 1e-12 * max(1.0, np.abs(m).max()):
            raise InvalidParameterError("covariance matrix must be symmetric")
        return cls(m[0, 0], m[1, 1], 0.5 * (m[0, 1] + m[1, 0]), measurement=measurement)


@dataclass(frozen=True)
class TwoModeCov:
    """Block covariance ``[[A, C], [C^T, B]]`` of a two-mode state."""

    A: CovMat2
    B: CovMat2
    C: np.ndarray

    def __post_init__(self):
        C = np.array(self.C, dtype=float)
        if C.shape != (2, 2):
            raise InvalidParameterError("cross-correlation block must be 2x2")
        C.setflags(write=False)
        object.__setattr__(self, "C", C)

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.A.matrix, self.C], [self.C.T, self.B.matrix]])


@dataclass(frozen=True)
class ComplexGaussParams:
    """Coefficients of a Gaussian characteristic function in complex notation."""

    A: float
    B: complex

    def __post_init__(self):
        object.__setattr__(self, "A", float(self.A))
        object.__setattr__(self, "B", complex(self.B))
        if self.A < 0 or self.A * self.A - 4 * abs(self.B) ** 2 <= 0:
            raise InvalidParameterError(
                f"characteristic function does not decay: A={self.A}, B={self.B}"
            )

    @property
    def discriminant(self) -> float:
        """``A^2 - 4|B|^2``, equal to the determinant of the covariance matrix."""
        return self.A * self.A - 4 * abs(self.B) ** 2

    def exponent(self, lam):
        """Return ``A|lam|^2 + B lam^2 + B^* lam^*^2`` (real for any ``lam``)."""
        lam = np.asarray(lam, dtype=complex)
        return self.A * np.abs(lam) ** 2 + 2 * np.real(self.B * lam * lam)

    def chi(self, lam):
        return np.exp(-self.exponent(lam))


def vacuum_cov() -> CovMat2:
    return CovMat2(0.5, 0.5, 0.0)


def squeezed_vacuum_cov(r: float) -> CovMat2:
    """Covariance matrix of S(r)|0> with S(r) = exp(r (a^dag^2 - a^2)/2).

    The x quadrature is anti-squeezed: ``diag(e^{2r}, e^{-2r}) / 2``.
    """
    r = _check_real("r", r)
    return CovMat2(0.5 * math.exp(2 * r), 0.5 * math.exp(-2 * r), 0.0)


def bs_symplectic(tau: float) -> np.ndarray:
    """4x4 symplectic matrix of a beam splitter with transmissivity ``tau``.

    Acts on covariance matrices by congruence, ``S.T @ sigma @ S``.
    """
    tau = check_tau(tau)
    t = math.sqrt(tau)
    s = math.sqrt(1.0 - tau)
    eye = np.eye(2)
    return np.block([[t * eye, s * eye], [-s * eye, t * eye]])


def apply_bs(sigma_a: CovMat2, sigma_b: CovMat2, tau: float) -> TwoModeCov:
    """Mix two uncorrelated modes on a beam splitter and return the blocks."""
    S = bs_symplectic(tau)
    zero = np.zeros((2, 2))
    sigma_in = np.block([[sigma_a.matrix, zero], [zero, sigma_b.matrix]])
    out = S.T @ sigma_in @ S
    out = 0.5 * (out + out.T)
    return TwoModeCov(
        A=CovMat2.from_matrix(out[:2, :2]),
        B=CovMat2.from_matrix(out[2:, 2:]),
        C=out[:2, 2:],
    )


def cartesian_to_complex(sigma: CovMat2) -> ComplexGaussParams:
    return ComplexGaussParams(
        A=0.5 * (sigma.a + sigma.b),
        B=0.25 * complex(sigma.b - sigma.a, 2 * sigma.c),
    )


def complex_to_cartesian(params: ComplexGaussParams, measurement=False) -> CovMat2:
    """Inverse of :func:`cartesian_to_complex`."""
    re, im = params.B.real, params.B.imag
    return CovMat2(
        a=params.A - 2 * re,
        b=params.A + 2 * re,
        c=2 * im,
        measurement=measurement,
    )
