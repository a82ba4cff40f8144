"""Expectation values, variances and correlation coefficients of local observables."""

from __future__ import annotations

import numpy as np
from scipy.stats import rankdata

from .errors import DimensionMismatch, NumericalInstability, UndefinedPCC
from .fano import FanoDecomposition
from .linalg import DensityOperator, Observable, as_complex_matrix

VAR_EPS = 1e-12
_IMAG_TOL = 1e-10
_CLAMP_TOL = 1e-10


def _op(x) -> np.ndarray:
    return x.matrix if isinstance(x, Observable) else as_complex_matrix(x, "observable")


def expectation(state: DensityOperator, x) -> float:
    """tr(S X)."""
    m = _op(x)
    if m.shape != (state.dim, state.dim):
        raise DimensionMismatch(f"observable shape {m.shape} does not match state dimension {state.dim}")
    z = np.trace(state.matrix @ m)
    if abs(z.imag) > _IMAG_TOL:
        raise NumericalInstability(f"expectation has imaginary part {z.imag:.3e}; is X Hermitian?")
    return float(z.real)


def variance(state: DensityOperator, x) -> float:
    m = _op(x)
    v = expectation(state, m @ m) - expectation(state, m) ** 2
    if -1e-12 <= v < 0:
        v = 0.0
    return v


def _local_ops(state: DensityOperator, a, b) -> tuple[np.ndarray, np.ndarray]:
    ma, mb = _op(a), _op(b)
    da, db = ma.shape[0], mb.shape[0]
    expected = tuple(state.dims) if len(state.dims) == 2 else None
    if da * db != state.dim or (expected is not None and (da, db) != expected):
        raise DimensionMismatch(f"local dimensions {da}x{db} do not match state dimensions {state.dims}")
    return np.kron(ma, np.eye(db)), np.kron(np.eye(da), mb)


def covariance(state: DensityOperator, a, b) -> float:
    ga, gb = _local_ops(state, a, b)
    return expectation(state, ga @ gb) - expectation(state, ga) * expectation(state, gb)


def _clamp(r: float) -> float:
    if abs(r) > 1.0 + _CLAMP_TOL:
        raise NumericalInstability(f"|correlation| = {abs(r):.15g} exceeds 1")
    return max(-1.0, min(1.0, r))


def pcc(state: DensityOperator, a, b, eps: float = VAR_EPS) -> float:
    """Pearson correlation of A (x) I and I (x) B in ``state``.

    Raises UndefinedPCC if either local variance is <= ``eps``.
    """
    ga, gb = _local_ops(state, a, b)
    va, vb = variance(state, ga), variance(state, gb)
    if va <= eps or vb <= eps:
        raise UndefinedPCC(f"vanishing variance (Var A = {va:.3e}, Var B = {vb:.3e}); correlation is 0/0")
    cov = expectation(state, ga @ gb) - expectation(state, ga) * expectation(state, gb)
    return _clamp(cov / np.sqrt(va * vb))


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(3)
    nv = np.linalg.norm(v)
    if abs(nv - 1.0) > 1e-10:
        raise ValueError(f"{name} must be a unit vector, |{name}| = {nv}")
    return v


def pcc_bloch(f: FanoDecomposition, a, b, eps: float = VAR_EPS) -> float:
    """PCC of a.sigma and b.sigma from the Bloch data: a^T C b / sqrt((1-(a.n)^2)(1-(b.s)^2))."""
    a, b = _unit(a, "a"), _unit(b, "b")
    va = 1.0 - float(a @ f.n) ** 2
    vb = 1.0 - float(b @ f.s) ** 2
    if va <= eps or vb <= eps:
        raise UndefinedPCC(f"vanishing variance (Var A = {va:.3e}, Var B = {vb:.3e}); correlation is 0/0")
    return _clamp(float(a @ f.C @ b) / np.sqrt(va * vb))


def rank_transform(x) -> Observable:
    """Same eigenvectors, eigenvalues replaced by their ascending ranks (ties averaged)."""
    obs = x if isinstance(x, Observable) else Observable(x)
    ranks = rankdata(np.round(obs.eigenvalues, 12), method="average")
    v = obs.eigenvectors
    return Observable((v * ranks) @ v.conj().T)


def spearman(state: DensityOperator, a, b, eps: float = VAR_EPS) -> float:
    return pcc(state, rank_transform(a), rank_transform(b), eps)
