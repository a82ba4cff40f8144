"""Von Neumann entropy, relative entropy and quantum mutual information (bits)."""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch
from .linalg import DensityOperator, partial_trace

_LOG_FLOOR = 1e-12
_WEIGHT_TOL = 1e-10


def _plogp(lam: np.ndarray) -> float:
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann(state: DensityOperator) -> float:
    """-tr(S log2 S); eigenvalues in [-1e-10, 0) count as zero."""
    return _plogp(state.eigenvalues) + 0.0


def relative_entropy(s1: DensityOperator, s2: DensityOperator) -> float:
    """tr[S1 (log2 S1 - log2 S2)], or ``math.inf`` when supp(S1) is not inside supp(S2)."""
    if s1.dim != s2.dim:
        raise DimensionMismatch(f"dimensions differ: {s1.dim} vs {s2.dim}")
    lam2, v2 = s2.eig
    # weight of S1 along each eigenvector of S2
    w = np.einsum("ik,ij,jk->k", v2.conj(), s1.matrix, v2).real
    null = lam2 < _LOG_FLOOR
    if np.any(w[null] > _WEIGHT_TOL):
        return math.inf
    cross = float(np.sum(w[~null] * np.log2(lam2[~null])))
    return max(0.0, -von_neumann(s1) - cross)


def marginals(state: DensityOperator) -> tuple[DensityOperator, DensityOperator]:
    return partial_trace(state, "B"), partial_trace(state, "A")


def mutual_information(state: DensityOperator) -> float:
    """S(A) + S(B) - S(AB)."""
    ra, rb = marginals(state)
    return max(0.0, von_neumann(ra) + von_neumann(rb) - von_neumann(state))


def mutual_information_relative(state: DensityOperator) -> float:
    """Relative entropy between the state and the product of its marginals."""
    ra, rb = marginals(state)
    return relative_entropy(state, DensityOperator(np.kron(ra.matrix, rb.matrix), state.dims))
