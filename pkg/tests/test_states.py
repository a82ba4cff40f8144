import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpcc import states
from qpcc.correlations import negativity
from qpcc.errors import NotAProbabilityTable, NotPhysical, OutOfRange
from qpcc.fano import decompose
from qpcc.linalg import purity


def test_bell_phi_entries():
    m = states.bell_phi().matrix
    assert m[0, 0] == pytest.approx(0.5)
    assert m[0, 3] == pytest.approx(0.5)
    assert purity(states.bell_phi()) == pytest.approx(1.0)


def test_werner_endpoints_and_spectrum():
    np.testing.assert_allclose(states.werner(0).matrix, np.eye(4) / 4)
    np.testing.assert_allclose(states.werner(1).matrix, states.bell_phi().matrix)
    # (1 + 3p)/4 once and (1 - p)/4 three times
    np.testing.assert_allclose(states.werner(1 / 3).eigenvalues, [1 / 2, 1 / 6, 1 / 6, 1 / 6], atol=1e-12)


def test_horodecki_endpoints_and_marginal():
    np.testing.assert_allclose(states.horodecki(1).matrix, states.bell_phi().matrix)
    np.testing.assert_allclose(states.horodecki(0).matrix, np.diag([1, 0, 0, 0]))
    from qpcc.linalg import partial_trace

    np.testing.assert_allclose(partial_trace(states.horodecki(1 / 3)).matrix, np.diag([5 / 6, 1 / 6]), atol=1e-15)


@pytest.mark.parametrize("family", [states.werner, states.horodecki])
def test_families_reject_out_of_range(family):
    for p in (-0.01, 1.01):
        with pytest.raises(OutOfRange):
            family(p)


@pytest.mark.parametrize("family", [states.werner, states.horodecki])
def test_families_valid_on_grid(family):
    for p in np.linspace(0, 1, 101):
        s = family(p)
        assert abs(np.trace(s.matrix) - 1) <= 1e-10
        assert s.eigenvalues[-1] >= -1e-10


@given(st.floats(0, 1))
@settings(max_examples=50, deadline=None)
def test_werner_any_p_is_physical(p):
    assert states.werner(p).eigenvalues[-1] >= -1e-10


def test_classical_diag_examples():
    np.testing.assert_allclose(states.classical_diag([[0.5, 0], [0, 0.5]]).matrix, np.diag([0.5, 0, 0, 0.5]))
    np.testing.assert_allclose(states.classical_diag([[0.25, 0.25], [0.25, 0.25]]).matrix, np.eye(4) / 4)
    np.testing.assert_allclose(states.classical_diag([[1, 0], [0, 0]]).matrix, np.diag([1, 0, 0, 0]))
    for bad in ([[0.5, 0.5], [0.5, 0]], [[1.2, -0.2], [0, 0]], [0.5, 0.5]):
        with pytest.raises(NotAProbabilityTable):
            states.classical_diag(bad)


def test_standard_form_examples():
    np.testing.assert_allclose(states.standard_form_state(0, 0, 0).matrix, np.eye(4) / 4)
    np.testing.assert_allclose(states.standard_form_state(1, -1, 1).matrix, states.bell_phi().matrix, atol=1e-15)
    with pytest.raises(NotPhysical):
        states.standard_form_state(1, 1, 1)


def test_standard_form_fano_roundtrip(rng):
    for _ in range(100):
        s, t = states.random_standard_form(rng)
        f = decompose(s)
        assert np.max(np.abs(f.n)) <= 1e-10 and np.max(np.abs(f.s)) <= 1e-10
        np.testing.assert_allclose(f.T, np.diag(t), atol=1e-10)


def test_random_density_contract():
    a = states.random_density(4, 7)
    b = states.random_density(4, 7)
    np.testing.assert_array_equal(a.matrix, b.matrix)
    assert abs(np.trace(a.matrix).real - 1) <= 1e-12
    assert a.eigenvalues[-1] >= -1e-10
    with pytest.raises(OutOfRange):
        states.random_density(1, 0)


def test_random_separable_is_ppt_and_deterministic(rng):
    for k in (1, 2, 5):
        s = states.random_separable(rng, terms=k)
        assert negativity(s) <= 1e-10
    np.testing.assert_array_equal(states.random_separable(3).matrix, states.random_separable(3).matrix)
    with pytest.raises(OutOfRange):
        states.random_separable(0, terms=0)


def test_random_separable_weights_sum_to_one():
    w = np.random.default_rng(11).dirichlet(np.ones(6))
    assert abs(w.sum() - 1) <= 1e-12
    assert abs(np.trace(states.random_separable(11, terms=6).matrix).real - 1) <= 1e-12


def test_random_classical(rng):
    for _ in range(20):
        assert negativity(states.random_classical(rng)) <= 1e-10
    core = states.random_classical(4, unitaries=False)
    m = core.matrix
    np.testing.assert_array_equal(m, np.diag(np.diag(m)))
    # only t33 can be non-zero in the diagonal core
    t = decompose(core).T
    mask = np.ones((3, 3), bool)
    mask[2, 2] = False
    assert np.max(np.abs(t[mask])) <= 1e-12


def test_haar_unitary_is_unitary(rng):
    for d in (2, 3):
        u = states.haar_unitary(d, rng)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(d), atol=1e-12)
