import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photonsub import (
    ComplexGaussParams,
    CovMat2,
    InvalidParameterError,
    apply_bs,
    bs_symplectic,
    cartesian_to_complex,
    complex_to_cartesian,
    squeezed_vacuum_cov,
    vacuum_cov,
)

OMEGA4 = np.block([
    [np.array([[0, 1], [-1, 0]]), np.zeros((2, 2))],
    [np.zeros((2, 2)), np.array([[0, 1], [-1, 0]])],
])

taus = st.floats(0.0, 1.0)
squeezings = st.floats(-2.0, 2.0)


@st.composite
def physical_covs(draw):
    # thermal-squeezed-rotated: nu * R diag(e^{2r}, e^{-2r}) R^T / 2 with nu >= 1
    nu = draw(st.floats(1.0, 5.0))
    r = draw(squeezings)
    phi = draw(st.floats(0.0, math.pi))
    R = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    m = nu * R @ np.diag([math.exp(2 * r), math.exp(-2 * r)]) @ R.T / 2
    return CovMat2.from_matrix(0.5 * (m + m.T))


def congruence(S, sigma):
    """S^T sigma S by explicit summation."""
    n = S.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = sum(S[k, i] * sigma[k, l] * S[l, j] for k in range(n) for l in range(n))
    return out


def test_squeezed_vacuum_r0_is_vacuum():
    assert squeezed_vacuum_cov(0.0) == vacuum_cov()


def test_squeezed_vacuum_values():
    s = squeezed_vacuum_cov(0.5)
    assert s.a == pytest.approx(1.3591409142295225, abs=1e-15)
    assert s.b == pytest.approx(0.18393972058572117, abs=1e-15)
    assert s.c == 0.0


@given(squeezings)
def test_squeezed_vacuum_is_pure(r):
    assert squeezed_vacuum_cov(r).det == pytest.approx(0.25, rel=1e-12)


def test_complex_squeezing_rejected():
    with pytest.raises(InvalidParameterError):
        squeezed_vacuum_cov(0.5 + 0.1j)
    with pytest.raises(InvalidParameterError):
        squeezed_vacuum_cov(float("nan"))


def test_covmat_validation():
    with pytest.raises(InvalidParameterError):
        CovMat2(0.1, 0.1)  # below the uncertainty bound
    with pytest.raises(InvalidParameterError):
        CovMat2(1.0, 1.0, 2.0)  # not positive definite
    CovMat2(0.1, 0.1, measurement=True)
    with pytest.raises(InvalidParameterError):
        CovMat2.from_matrix([[1.0, 0.2], [0.3, 1.0]])


def test_bs_identity_and_swap():
    np.testing.assert_array_equal(bs_symplectic(1.0), np.eye(4))
    expected = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
    np.testing.assert_array_equal(bs_symplectic(0.0), expected)


@given(taus)
def test_bs_orthogonal_symplectic(tau):
    S = bs_symplectic(tau)
    np.testing.assert_allclose(S.T @ S, np.eye(4), atol=1e-15)
    np.testing.assert_allclose(S.T @ OMEGA4 @ S, OMEGA4, atol=1e-15)


@pytest.mark.parametrize("tau", [-0.1, 1.1, float("inf")])
def test_bs_rejects_tau(tau):
    with pytest.raises(InvalidParameterError):
        bs_symplectic(tau)


def test_apply_bs_tau1():
    sa = squeezed_vacuum_cov(0.7)
    out = apply_bs(sa, vacuum_cov(), 1.0)
    assert out.A == sa
    assert out.B == vacuum_cov()
    np.testing.assert_array_equal(out.C, 0)


@given(taus)
def test_vacuum_is_bs_invariant(tau):
    out = apply_bs(vacuum_cov(), vacuum_cov(), tau)
    np.testing.assert_allclose(out.A.matrix, 0.5 * np.eye(2), atol=1e-15)
    np.testing.assert_allclose(out.B.matrix, 0.5 * np.eye(2), atol=1e-15)
    np.testing.assert_allclose(out.C, 0, atol=1e-15)


def test_apply_bs_matches_brute_force():
    sa, sb, tau = squeezed_vacuum_cov(0.5), vacuum_cov(), 0.75
    S = bs_symplectic(tau)
    full = np.zeros((4, 4))
    full[:2, :2] = sa.matrix
    full[2:, 2:] = sb.matrix
    ref = congruence(S, full)
    out = apply_bs(sa, sb, tau)
    np.testing.assert_allclose(out.matrix, ref, atol=1e-14)
    # diagonal-input closed form
    np.testing.assert_allclose(out.A.matrix, tau * sa.matrix + (1 - tau) * sb.matrix, atol=1e-14)
    np.testing.assert_allclose(out.B.matrix, (1 - tau) * sa.matrix + tau * sb.matrix, atol=1e-14)
    np.testing.assert_allclose(
        np.abs(out.C), np.abs(math.sqrt(tau * (1 - tau)) * (sb.matrix - sa.matrix)), atol=1e-14
    )


@given(physical_covs(), physical_covs(), taus)
def test_bs_preserves_determinant(sa, sb, tau):
    out = apply_bs(sa, sb, tau)
    assert np.linalg.det(out.matrix) == pytest.approx(sa.det * sb.det, rel=1e-9)
    assert np.all(np.linalg.eigvalsh(out.matrix) > 0)


def test_cartesian_to_complex_examples():
    v = cartesian_to_complex(vacuum_cov())
    assert (v.A, v.B) == (0.5, 0j)
    for r in (0.3, 0.5, 1.0):
        g = cartesian_to_complex(squeezed_vacuum_cov(r))
        assert g.A == pytest.approx(math.cosh(2 * r) / 2, rel=1e-14)
        assert g.B == pytest.approx(-math.sinh(2 * r) / 4, rel=1e-14)
    g = cartesian_to_complex(CovMat2(1.0, 1.0, 0.5))
    assert (g.A, g.B) == (1.0, 0.25j)


def test_degenerate_correlation_rejected():
    # a = b = c = 1/2 maps to A = 1/2, B = i/4, which does not decay along one direction
    with pytest.raises(InvalidParameterError):
        CovMat2(0.5, 0.5, 0.5)
    with pytest.raises(InvalidParameterError):
        ComplexGaussParams(0.5, 0.25j)


@given(physical_covs())
def test_complex_round_trip(sigma):
    g = cartesian_to_complex(sigma)
    back = complex_to_cartesian(g)
    np.testing.assert_allclose(back.matrix, sigma.matrix, rtol=1e-12, atol=1e-14)
    assert g.discriminant == pytest.approx(sigma.det, rel=1e-9)
    assert g.chi(0) == 1.0


@given(physical_covs(), st.floats(-3, 3), st.floats(-3, 3))
def test_complex_form_matches_cartesian(sigma, u, v):
    # chi(lambda) = exp(-1/2 L^T Omega^T sigma Omega L) with L = (u, v), lambda = (u + iv)/sqrt(2)
    g = cartesian_to_complex(sigma)
    L = np.array([u, v])
    Om = np.array([[0, 1], [-1, 0]])
    expected = math.exp(-0.5 * L @ Om.T @ sigma.matrix @ Om @ L)
    assert g.chi((u + 1j * v) / math.sqrt(2)) == pytest.approx(expected, rel=1e-9, abs=1e-300)
