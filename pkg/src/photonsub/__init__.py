"""Inconclusive photon subtraction on a squeezed vacuum.

Closed-form Gaussian pipeline for the conditional state produced by mixing a
squeezed vacuum with vacuum on a beam splitter and conditioning on a click of
an on/off detector, together with an independent truncated-Fock oracle.
"""

from photonsub.errors import (
    ConvergenceError,
    InvalidParameterError,
    NoClickError,
    NormalizabilityError,
)
from photonsub.gaussian import (
    ComplexGaussParams,
    CovMat2,
    TwoModeCov,
    apply_bs,
    bs_symplectic,
    cartesian_to_complex,
    complex_to_cartesian,
    squeezed_vacuum_cov,
    vacuum_cov,
)
from photonsub.conditioning import (
    ConditionalState,
    IPSParams,
    click_probability,
    click_probability_blocks,
    click_probability_first_order,
    conditional_state,
    sigma_M,
    tau_eff,
)
from photonsub.quasiprob import (
    PhaseSpaceGrid,
    SqueezedFockParams,
    char_ips,
    char_squeezed_fock,
    quasiprob_s,
    wigner,
    wigner_grid,
    wigner_squeezed_fock,
)
from photonsub.metrics import (
    FidelityReport,
    NonclassicalityReport,
    fidelity,
    fidelity_first_order,
    nonclassical_depth,
    purity,
    s_bar,
    wigner_positivity_threshold,
)

CONVENTIONS_VERSION = "1"

__all__ = [
    "CONVENTIONS_VERSION",
    "ComplexGaussParams",
    "ConditionalState",
    "ConvergenceError",
    "CovMat2",
    "FidelityReport",
    "IPSParams",
    "InvalidParameterError",
    "NoClickError",
    "NonclassicalityReport",
    "NormalizabilityError",
    "PhaseSpaceGrid",
    "SqueezedFockParams",
    "TwoModeCov",
    "apply_bs",
    "bs_symplectic",
    "cartesian_to_complex",
    "char_ips",
    "char_squeezed_fock",
    "click_probability",
    "click_probability_blocks",
    "click_probability_first_order",
    "complex_to_cartesian",
    "conditional_state",
    "fidelity",
    "fidelity_first_order",
    "nonclassical_depth",
    "purity",
    "quasiprob_s",
    "s_bar",
    "sigma_M",
    "squeezed_vacuum_cov",
    "tau_eff",
    "vacuum_cov",
    "wigner",
    "wigner_grid",
    "wigner_positivity_threshold",
    "wigner_squeezed_fock",
]
