"""Orthonormal bases, mutual unbiasedness and the entropic uncertainty relation."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch
from .linalg import DensityOperator, Observable, as_complex_matrix
from .paulis import PAULIS

_GRAM_TOL = 1e-10


class Basis:
    """Orthonormal basis of C^d, stored as the columns of a unitary matrix."""

    __slots__ = ("vectors",)

    def __init__(self, columns):
        v = as_complex_matrix(columns, "basis")
        d = v.shape[0]
        if v.shape != (d, d):
            raise DimensionMismatch(f"basis needs {d} vectors of length {d}, got {v.shape}")
        err = np.max(np.abs(v.conj().T @ v - np.eye(d)))
        if err > _GRAM_TOL:
            raise ValueError(f"basis vectors not orthonormal (Gram error {err:.3e})")
        v.setflags(write=False)
        self.vectors = v

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def of(cls, observable) -> "Basis":
        """Eigenbasis of an observable, ordered by descending eigenvalue."""
        obs = observable if isinstance(observable, Observable) else Observable(observable)
        return cls(obs.eigenvectors)

    @classmethod
    def computational(cls, d: int) -> "Basis":
        return cls(np.eye(d))


def _same_dim(b1: Basis, b2: Basis) -> None:
    if b1.dim != b2.dim:
        raise DimensionMismatch(f"basis dimensions differ: {b1.dim} vs {b2.dim}")


def outcome_probabilities(state: DensityOperator, basis: Basis) -> np.ndarray:
    if state.dim != basis.dim:
        raise DimensionMismatch(f"state dimension {state.dim} vs basis dimension {basis.dim}")
    v = basis.vectors
    p = np.einsum("ik,ij,jk->k", v.conj(), state.matrix, v).real
    p[(p < 0) & (p >= -1e-12)] = 0.0
    return p


def shannon_entropy(state: DensityOperator, basis: Basis) -> float:
    """Entropy in bits of the measurement outcomes, with 0 log 0 = 0."""
    p = outcome_probabilities(state, basis)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def overlaps(b1: Basis, b2: Basis) -> np.ndarray:
    """|<x_k|y_l>|^2 for all k, l."""
    _same_dim(b1, b2)
    return np.abs(b1.vectors.conj().T @ b2.vectors) ** 2


def incompatibility(b1: Basis, b2: Basis) -> float:
    """-log2 of the largest squared overlap, in [0, log2 d]."""
    c = min(1.0, float(np.max(overlaps(b1, b2))))
    return float(-np.log2(c)) + 0.0


def is_mub(b1: Basis, b2: Basis, tol: float = 1e-8) -> bool:
    d = b1.dim
    return bool(np.all(np.abs(overlaps(b1, b2) - 1.0 / d) <= tol / d))


def pauli_triplet() -> tuple[Observable, Observable, Observable]:
    """X, Y, Z: a complete set of three pairwise complementary qubit observables."""
    return tuple(Observable(p) for p in PAULIS)


class UncertaintyCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs


def uncertainty_check(state: DensityOperator, b1: Basis, b2: Basis, tol: float = 1e-9) -> UncertaintyCheck:
    """Compare H(X) + H(Y) with the incompatibility of the two bases."""
    lhs = shannon_entropy(state, b1) + shannon_entropy(state, b2)
    rhs = incompatibility(b1, b2)
    return UncertaintyCheck(lhs, rhs, lhs >= rhs - tol)
