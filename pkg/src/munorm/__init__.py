"""Partition-based operator norms and their derived quantities.

The core object is a seminorm on bounded operators defined through
measurable partitions: the infimum over partitions of the weighted sum
of squared block-restricted operator norms.  On finite spaces it is
computed exactly; on the circle it is evaluated in closed form for
convolution operators and for periodic banded (diagonal-type) matrices.
On top of it sit the dimension of a subspace, a path entropy for
unitaries mirroring the measure entropy of a map, and the average-trace
lower bound for the diagonal-type algebra.
"""

from .circle import (
    DiagonalSeqOperator,
    DtMuNorm,
    EventuallyPeriodicSeq,
    PeriodicBandOperator,
    avg_trace,
    avg_trace_window,
    conv_mu_norm_sq,
    conv_norm,
    dt_add,
    dt_adjoint,
    dt_compose,
    dt_from_conv,
    dt_from_multiplier,
    dt_mu_norm_sq,
    dt_norm,
    dt_scale,
    finite_section,
    rho,
    rho_la,
    rho_window_max,
    w_l,
)
from .entropy import (
    DEFAULT_TERM_CAP,
    EntropyReport,
    ks_entropy_at,
    ks_path_measure_table,
    markov_entropy_rate,
    path_mass_table,
    path_mass_total,
    path_operator,
    quantum_entropy_at,
    quantum_entropy_closed,
    quantum_entropy_rate,
)
from .errors import CapExceeded
from .norm import (
    CyclicAction,
    cyclic_projector,
    m_chi,
    mu_dim,
    mu_norm,
    mu_norm_sq,
    weighted_gram_schmidt,
)
from .operators import (
    Endomorphism,
    OperatorMatrix,
    add,
    adjoint,
    compose,
    identity,
    inner,
    koopman,
    multiplication,
    operator_norm,
    projector,
    scale,
    unitarity_defect,
    vector_norm,
)
from .spaces import (
    FiniteMeasureSpace,
    Partition,
    finest_partition,
    is_subpartition,
    join,
    make_space,
    measure_of,
    trivial_partition,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CyclicAction",
    "DEFAULT_TERM_CAP",
    "DiagonalSeqOperator",
    "DtMuNorm",
    "Endomorphism",
    "EntropyReport",
    "EventuallyPeriodicSeq",
    "FiniteMeasureSpace",
    "OperatorMatrix",
    "Partition",
    "PeriodicBandOperator",
    "add",
    "adjoint",
    "avg_trace",
    "avg_trace_window",
    "compose",
    "conv_mu_norm_sq",
    "conv_norm",
    "cyclic_projector",
    "dt_add",
    "dt_adjoint",
    "dt_compose",
    "dt_from_conv",
    "dt_from_multiplier",
    "dt_mu_norm_sq",
    "dt_norm",
    "dt_scale",
    "finest_partition",
    "finite_section",
    "identity",
    "inner",
    "is_subpartition",
    "join",
    "koopman",
    "ks_entropy_at",
    "ks_path_measure_table",
    "m_chi",
    "make_space",
    "markov_entropy_rate",
    "measure_of",
    "mu_dim",
    "mu_norm",
    "mu_norm_sq",
    "multiplication",
    "operator_norm",
    "path_mass_table",
    "path_mass_total",
    "path_operator",
    "projector",
    "quantum_entropy_at",
    "quantum_entropy_closed",
    "quantum_entropy_rate",
    "rho",
    "rho_la",
    "rho_window_max",
    "scale",
    "trivial_partition",
    "unitarity_defect",
    "vector_norm",
    "w_l",
    "weighted_gram_schmidt",
]
