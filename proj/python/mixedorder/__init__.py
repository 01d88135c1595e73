"""Dense density-matrix laboratory for mixed-state order.

Thin wrapper around the compiled extension; everything public lives in
``mixedorder._core``.
"""

from ._core import (  # noqa: F401
    DensityMatrix,
    KrausChannel,
    LatticeSpec,
    classify_ssb,
    cmi,
    cmi_markov_gap,
    compose,
    fidelity,
    fidelity_correlator,
    layered_recovery,
    linear_correlator,
    nishimori_beta,
    partial_trace,
    pauli_x,
    pauli_y,
    pauli_z,
    purity_ising_pc,
    relative_entropy,
    renyi2_correlator,
    site_x_dephasing,
    state_counterexample,
    state_decohered_ising,
    state_ghz,
    state_one_plus_X,
    state_plus_product,
    state_thermal_commuting,
    tensor,
    theta_channel,
    thermal_fidelity_closed_form,
    trace_distance,
    villain_fn_coefficients,
    zz_dephasing,
)

__version__ = "0.1.0"
