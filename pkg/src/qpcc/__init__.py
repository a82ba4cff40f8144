"""Total correlations of two-qubit states from Pearson correlation coefficients.

The measure maximizes the summed absolute PCC of three pairs of locally
complementary observables; mutual information is provided as a baseline.
"""

__version__ = "0.1.0"

from .correlations import (
    Classification,
    CorrelationReport,
    MeasurementFrame,
    OptimizerOptions,
    bounds,
    classical_r_closed_form,
    classify,
    max_single_pair,
    negativity,
    pair_sum,
    total_correlations,
)
from .entropy import mutual_information, relative_entropy, von_neumann
from .fano import FanoDecomposition, decompose, reconstruct
from .linalg import DensityOperator, Observable, apply_local_unitary, hermitian_eig, partial_trace, purity, tensor
from .states import bell_phi, classical_diag, horodecki, standard_form_state, werner
from .statistics import pcc, pcc_bloch, spearman
