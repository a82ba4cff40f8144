"""JSON state specifications.

Named form::

    {"family": "werner", "p": 0.3}
    {"family": "horodecki", "p": 0.3}
    {"family": "bell"}
    {"family": "classical_diag", "table": [[0.5, 0], [0, 0.5]]}
    {"family": "standard_form", "t": [0.2, -0.2, 0.2]}

Explicit form (entries as [re, im] pairs)::

    {"dim": 4, "matrix": [[[0.25, 0], [0, 0], ...], ...]}
"""

from __future__ import annotations

import numpy as np

from . import states
from .linalg import DensityOperator


class StateSpecError(ValueError):
    pass


def _need(spec: dict, key: str):
    if key not in spec:
        raise StateSpecError(f"state spec for family {spec.get('family')!r} needs field {key!r}")
    return spec[key]


def parse_state_spec(spec) -> DensityOperator:
    """Build a validated state from a parsed JSON object.

    Physical-validity failures surface as the package's own exceptions
    (NotHermitian, NotPhysical, ...); malformed specs raise StateSpecError.
    """
    if not isinstance(spec, dict):
        raise StateSpecError("state spec must be a JSON object")
    if "family" in spec:
        fam = spec["family"]
        if fam == "werner":
            return states.werner(float(_need(spec, "p")))
        if fam == "horodecki":
            return states.horodecki(float(_need(spec, "p")))
        if fam == "bell":
            return states.bell_phi()
        if fam == "classical_diag":
            return states.classical_diag(_need(spec, "table"))
        if fam == "standard_form":
            t = _need(spec, "t")
            if len(t) != 3:
                raise StateSpecError("standard_form needs t = [t1, t2, t3]")
            return states.standard_form_state(*map(float, t))
        raise StateSpecError(f"unknown family {fam!r}")
    if "matrix" in spec:
        try:
            m = np.array(spec["matrix"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise StateSpecError(f"matrix entries must be [re, im] pairs: {exc}") from None
        if m.ndim != 3 or m.shape[2] != 2 or m.shape[0] != m.shape[1]:
            raise StateSpecError(f"matrix must be a d x d array of [re, im] pairs, got shape {m.shape}")
        dim = int(spec.get("dim", m.shape[0]))
        if dim != m.shape[0]:
            raise StateSpecError(f"dim {dim} does not match matrix size {m.shape[0]}")
        return DensityOperator(m[..., 0] + 1j * m[..., 1], spec.get("dims"))
    raise StateSpecError("state spec needs either 'family' or 'matrix'")


def state_to_spec(state: DensityOperator) -> dict:
    m = state.matrix
    return {
        "dim": state.dim,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }
