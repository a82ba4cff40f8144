"""Pauli operator basis.

The order (X, Y, Z) is used for every Bloch vector and correlation tensor
in the package, so e.g. the Bell state Phi has t = diag(1, -1, 1).
"""

import numpy as np

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (IDENTITY, *PAULIS):
    _m.setflags(write=False)


def bloch_operator(v) -> np.ndarray:
    """v . (X, Y, Z)."""
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z
