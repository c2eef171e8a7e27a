"""Numerical laboratory for correlated two-use qudit displacement channels.

Simulates two consecutive uses of d-dimensional Heisenberg (displacement
error) channels whose error indices are Markov-correlated with memory
weight mu, computes the mutual-information figure of merit for product and
maximally entangled inputs, and locates the memory value where entanglement
starts to pay off.
"""

__version__ = "0.1.0"

from .channels import (
    ChannelSpec,
    JointProbTable,
    MarginalTable,
    Model,
    apply_channel,
    apply_channel_naive,
    channel_marginal,
    eta_range,
    joint_probability,
    qcd_marginal,
    qd_marginal,
)
from .crossover import (
    CrossoverResult,
    MultipleCrossingsError,
    SweepRow,
    delta_I,
    find_crossover,
    sweep_crossover,
    sweep_point,
)
from .displacement import commutation_phase, conjugate_monomial, displacement, displacement_perm_phase
from .entropy import (
    EntropyResult,
    MutualInfoPoint,
    entropy_from_eigenvalues,
    mutual_information,
    mutual_information_ansatz,
    mutual_information_curve,
    output_spectrum,
    von_neumann_entropy,
)
from .states import (
    AnsatzParams,
    PureState,
    ansatz_state,
    averaging_map,
    density_from_pure,
    interpolating_params,
    interpolating_state,
    max_entangled_params,
    product_params,
)

__all__ = [
    "AnsatzParams",
    "ChannelSpec",
    "CrossoverResult",
    "EntropyResult",
    "JointProbTable",
    "MarginalTable",
    "Model",
    "MultipleCrossingsError",
    "MutualInfoPoint",
    "PureState",
    "SweepRow",
    "__version__",
    "ansatz_state",
    "apply_channel",
    "apply_channel_naive",
    "averaging_map",
    "channel_marginal",
    "commutation_phase",
    "conjugate_monomial",
    "delta_I",
    "density_from_pure",
    "displacement",
    "displacement_perm_phase",
    "entropy_from_eigenvalues",
    "eta_range",
    "find_crossover",
    "interpolating_params",
    "interpolating_state",
    "joint_probability",
    "max_entangled_params",
    "mutual_information",
    "mutual_information_ansatz",
    "mutual_information_curve",
    "output_spectrum",
    "product_params",
    "qcd_marginal",
    "qd_marginal",
    "sweep_crossover",
    "sweep_point",
    "von_neumann_entropy",
]
