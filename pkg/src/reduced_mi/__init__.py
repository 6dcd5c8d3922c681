"""Mutual information between labelings with reduced (table-aware) encodings."""

from .core import (
    ContingencyTable,
    Labeling,
    LabelingError,
    are_permutation_equivalent,
    build_contingency,
    group_sizes,
    labeling_from_tokens,
    relabel_dense,
)
from .dm import (
    AlphaFit,
    DmCostBreakdown,
    dm_log_prob,
    dm_table_cost,
    dm_vector_cost,
    dm_vector_cost_zero_limit,
    entropy_dm,
    mi_dm,
    optimize_alpha,
)
from .flat import (
    OmegaEstimate,
    entropy_flat,
    entropy_h0,
    mi_flat,
    mi_traditional,
    omega_effective_columns,
    omega_exact,
)
from .logmath import dm_log_binomial, log_binomial, log_factorial
from .similarity import (
    CanonicalLabeling,
    MeasureReport,
    ZeroInformationError,
    canonicalize,
    clustering_entropy,
    clustering_mi_identity_check,
    compare,
    nmi,
    nmi_dm_symmetric,
)

__version__ = "0.1.0"
