"""Characteristic functions and s-ordered quasi-probabilities.

Phase-space points are complex: ``alpha = (x + i y)/sqrt(2)`` and
``lambda = (x + i y)/sqrt(2)``, with ``y`` the squeezed quadrature of the
states built here. Quasi-probabilities are densities with respect to
``d^2 alpha = dx dy / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from photonsub.conditioning import ConditionalState
from photonsub.errors import InvalidParameterError, NormalizabilityError
from photonsub.gaussian import ComplexGaussParams, _check_real

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SqueezedFockParams:
    """Target state S(z)|1>; ``A0`` and ``B0`` are those of S(z)|0>."""

    z: float
    A0: float = field(init=False)
    B0: float = field(init=False)

    def __post_init__(self):
        z = _check_real("z", self.z)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "A0", 0.5 * (math.cosh(z) ** 2 + math.sinh(z) ** 2))
        object.__setattr__(self, "B0", -0.5 * math.cosh(z) * math.sinh(z))

    @property
    def gauss(self) -> ComplexGaussParams:
        return ComplexGaussParams(self.A0, self.B0)


@dataclass(frozen=True)
class PhaseSpaceGrid:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise InvalidParameterError("grid bounds must satisfy max > min")
        if self.nx < 2 or self.ny < 2:
            raise InvalidParameterError("grid needs at least two points per axis")

    @classmethod
    def symmetric(cls, half_width: float, n: int = 201) -> PhaseSpaceGrid:
        return cls(-half_width, half_width, -half_width, half_width, n, n)

    @classmethod
    def for_state(cls, state, n: int = 201, width: float = 5.0) -> PhaseSpaceGrid:
        """Square grid spanning ``width`` standard deviations of the widest component."""
        if isinstance(state, SqueezedFockParams):
            variance = state.A0 + 2 * abs(state.B0)
        else:
            variance = max(state.sigma1.a, state.sigma1.b)
        return cls.symmetric(width * math.sqrt(variance), n)

    @property
    def x(self) -> np.ndarray:
        return _axis(self.x_min, self.x_max, self.nx)

    @property
    def y(self) -> np.ndarray:
        return _axis(self.y_min, self.y_max, self.ny)

    def alphas(self) -> np.ndarray:
        """Complex points, shape ``(ny, nx)``; rows follow ``y``."""
        X, Y = np.meshgrid(self.x, self.y)
        return (X + 1j * Y) / SQRT2

    def integrate(self, values) -> float:
        """Trapezoidal ``integral f d^2 alpha`` of values sampled on this grid."""
        values = np.asarray(values, dtype=float)
        inner = trapezoid(values, self.x, axis=1)
        return 0.5 * float(trapezoid(inner, self.y))


def _axis(lo, hi, n):
    # integer offsets keep centred axes exactly mirror-symmetric
    steps = (2.0 * np.arange(n) - (n - 1)) / (n - 1)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * steps


def _components(state):
    if isinstance(state, ConditionalState):
        return state.components
    if isinstance(state, ComplexGaussParams):
        return ((1.0, state),)
    raise TypeError(f"unsupported state type {type(state).__name__}")


def char_ips(state, lam):
    """Characteristic function ``sum_k w_k exp(-A_k|lam|^2 - B_k lam^2 - c.c.)``."""
    lam = np.asarray(lam, dtype=complex)
    out = np.zeros(lam.shape, dtype=complex)
    for w, g in _components(state):
        out += w * g.chi(lam)
    return out if out.ndim else complex(out)


def char_squeezed_fock(z, lam):
    target = z if isinstance(z, SqueezedFockParams) else SqueezedFockParams(z)
    lam = np.asarray(lam, dtype=complex)
    q = target.gauss.exponent(lam)
    out = ((1.0 - 2.0 * q) * np.exp(-q)).astype(complex)
    return out if out.ndim else complex(out)


def _gauss_terms(g: ComplexGaussParams, alpha, s):
    """Return (quadratic form, normalization) of one Gaussian's s-ordered function."""
    shifted = 2.0 * g.A - s
    disc = shifted * shifted - 16.0 * abs(g.B) ** 2
    alpha = np.asarray(alpha, dtype=complex)
    quad = (2.0 * shifted * np.abs(alpha) ** 2 + 8.0 * np.real(np.conj(g.B) * alpha * alpha)) / disc
    return quad, 2.0 / (math.pi * math.sqrt(disc))


def max_normalizable_s(state) -> float:
    """Supremum of s for which every Gaussian component stays normalizable."""
    return min(2.0 * g.A - 4.0 * abs(g.B) for _, g in _components(state))


def quasiprob_s(state, alpha, s: float = 0.0):
    """s-ordered quasi-probability ``W_s(alpha)``; ``s = 0`` is the Wigner function.

    Raises:
        NormalizabilityError: if some component is not normalizable at ``s``.
    """
    s = float(s)
    terms = []
    for k, (w, g) in enumerate(_components(state), start=1):
        if not s < 2.0 * g.A - 4.0 * abs(g.B):
            raise NormalizabilityError(
                f"s = {s} exceeds the normalizable bound {2.0 * g.A - 4.0 * abs(g.B)} "
                f"of component {k}",
                component=k,
            )
        terms.append((w, g))
    alpha = np.asarray(alpha, dtype=complex)
    out = np.zeros(alpha.shape)
    for w, g in terms:
        quad, norm = _gauss_terms(g, alpha, s)
        out += w * norm * np.exp(-quad)
    return out if out.ndim else float(out)


def wigner(state, alpha):
    return quasiprob_s(state, alpha, 0.0)


def wigner_squeezed_fock(z, alpha):
    """Wigner function of S(z)|1>, a Gaussian times ``(2Q - 1)``."""
    target = z if isinstance(z, SqueezedFockParams) else SqueezedFockParams(z)
    quad, norm = _gauss_terms(target.gauss, alpha, 0.0)
    out = norm * (2.0 * quad - 1.0) * np.exp(-quad)
    return out if np.ndim(out) else float(out)


def wigner_xy(state, x, y):
    """Wigner function at Cartesian phase-space coordinates."""
    alpha = (np.asarray(x) + 1j * np.asarray(y)) / SQRT2
    if isinstance(state, SqueezedFockParams):
        return wigner_squeezed_fock(state, alpha)
    return wigner(state, alpha)


def wigner_grid(state, grid: PhaseSpaceGrid) -> np.ndarray:
    """Wigner function on ``grid``, shape ``(ny, nx)``.

    ``state`` is a :class:`ConditionalState`, a single
    :class:`ComplexGaussParams` or a :class:`SqueezedFockParams` target.
    """
    alphas = grid.alphas()
    if isinstance(state, SqueezedFockParams):
        return wigner_squeezed_fock(state, alphas)
    return wigner(state, alphas)
