"""Fano (Bloch) decomposition of two-qubit states."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotHermitian, NotPhysical, NotStandardForm, NotTwoQubit
from .linalg import DensityOperator
from .paulis import IDENTITY, PAULIS

_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class FanoDecomposition:
    """Local Bloch vectors ``n`` (side A), ``s`` (side B) and correlation tensor ``T``.

    ``C = T - n s^T`` is the covariance matrix of the dichotomic observables
    a . sigma and b . sigma.
    """

    n: np.ndarray
    s: np.ndarray
    T: np.ndarray
    C: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = np.array(self.n, dtype=float).reshape(3)
        s = np.array(self.s, dtype=float).reshape(3)
        t = np.array(self.T, dtype=float).reshape(3, 3)
        c = t - np.outer(n, s)
        for a in (n, s, t, c):
            a.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "T", t)
        object.__setattr__(self, "C", c)


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > _IMAG_TOL:
        raise NotHermitian(f"{what} has imaginary part {z.imag:.3e}")
    return z.real


def decompose(state: DensityOperator) -> FanoDecomposition:
    if state.dim != 4 or state.dims != (2, 2):
        raise NotTwoQubit(f"expected a two-qubit state, got dims {state.dims}")
    m = state.matrix
    n = [_real(np.trace(m @ np.kron(p, IDENTITY)), f"n[{k}]") for k, p in enumerate(PAULIS)]
    s = [_real(np.trace(m @ np.kron(IDENTITY, p)), f"s[{k}]") for k, p in enumerate(PAULIS)]
    t = [
        [_real(np.trace(m @ np.kron(pk, pl)), f"t[{k},{l}]") for l, pl in enumerate(PAULIS)]
        for k, pk in enumerate(PAULIS)
    ]
    return FanoDecomposition(n, s, t)


def fano_matrix(f: FanoDecomposition) -> np.ndarray:
    m = np.kron(IDENTITY, IDENTITY).astype(np.complex128)
    for k, pk in enumerate(PAULIS):
        m += f.n[k] * np.kron(pk, IDENTITY) + f.s[k] * np.kron(IDENTITY, pk)
        for l, pl in enumerate(PAULIS):
            m += f.T[k, l] * np.kron(pk, pl)
    return m / 4


def reconstruct(f: FanoDecomposition) -> DensityOperator:
    try:
        return DensityOperator(fano_matrix(f))
    except NotPhysical as exc:
        raise NotPhysical(f"Fano coefficients do not describe a state: {exc}") from None


def correlation_matrix(f: FanoDecomposition) -> np.ndarray:
    return np.array(f.C)


def is_standard_form(f: FanoDecomposition, tol: float = 1e-8) -> bool:
    """True when both marginals are maximally mixed (diagonal T is not required)."""
    return bool(np.linalg.norm(f.n) <= tol and np.linalg.norm(f.s) <= tol)


def standard_form_coefficients(f: FanoDecomposition, tol: float = 1e-8) -> np.ndarray:
    """Singular values of T for a state with maximally mixed marginals.

    A local-unitary change of frame brings T to diagonal form with these
    magnitudes, so counting them does not depend on the frame.
    """
    if not is_standard_form(f, tol):
        raise NotStandardForm(f"marginals not maximally mixed: |n| = {np.linalg.norm(f.n):.3e}, |s| = {np.linalg.norm(f.s):.3e}")
    return np.linalg.svd(f.T, compute_uv=False)


def is_classical_standard_form(f: FanoDecomposition, tol: float = 1e-8) -> bool:
    """Standard-form state with exactly one non-zero correlation coefficient."""
    return int(np.sum(standard_form_coefficients(f, tol) > tol)) == 1
