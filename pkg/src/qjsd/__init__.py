"""Quantum Jensen-Shannon divergence and related distinguishability measures."""
__version__ = "0.1.0"

from ._backend import backend_name
from .classical import (
    ProbDist,
    classical_jsd,
    generalized_jsd,
    hellinger_classical,
    kl_divergence,
    kolmogorov_distance,
    make_probdist,
    shannon_entropy,
)
from .divergences import (
    bures_distance,
    donald_residual,
    fidelity,
    generalized_qjsd,
    hellinger_quantum,
    holevo_chi,
    js_fidelity,
    jsd_via_reference,
    mutual_information,
    povm_induced_jsd,
    qjsd,
    qjsd_spectral,
    relative_entropy,
    trace_distance,
    von_neumann_entropy,
    werner_qjsd_closed_form,
    werner_qjsd_short_form,
    wootters_distance,
)
from .entanglement import (
    EntanglementEstimate,
    OptimizerConfig,
    SeparableAnsatz,
    estimate_e_js,
    ppt_verdict,
)
from .errors import (
    DimensionMismatch,
    QJSDError,
    ValidationError,
)
from .states import (
    POVM,
    DensityOperator,
    KrausChannel,
    PureState,
    StateEnsemble,
    bell_state,
    make_channel,
    make_density,
    make_ensemble,
    make_povm,
    make_pure,
    random_density,
    werner_state,
)
