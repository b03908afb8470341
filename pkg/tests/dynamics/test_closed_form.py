import numpy as np
import pytest

from src.dynamics.closed_form import c1_coefficient, c1_coefficient_as_printed, evolve_n2_closed_form
from src.dynamics.propagator import SpectralPropagator
from src.hilbert.basis import initial_joint_state
from src.hilbert.field_states import coherent_coefficients, custom_coefficients, squeezed_vacuum_coefficients
from src.utils.exceptions import ConfigurationError


@pytest.mark.parametrize("alpha", [0.1, 0.4, 0.9])
def test_matches_spectral_propagator(alpha):
    field_state = coherent_coefficients(alpha)
    propagator = SpectralPropagator(initial_joint_state(2, field_state))
    for gt in np.linspace(0.0, 100.0, 51):
        exact = propagator.state_at(gt).amplitudes
        closed = evolve_n2_closed_form(field_state, gt).amplitudes
        assert np.max(np.abs(exact - closed)) < 1e-9


def test_matches_for_squeezed_vacuum():
    field_state = squeezed_vacuum_coefficients(0.5)
    propagator = SpectralPropagator(initial_joint_state(2, field_state))
    for gt in (0.4, 3.3, 27.0):
        assert np.allclose(
            propagator.state_at(gt).amplitudes,
            evolve_n2_closed_form(field_state, gt).amplitudes,
            atol=1e-10,
        )


def test_printed_coefficient_breaks_agreement():
    field_state = custom_coefficients([0.0, 0.0, 1.0])
    gt = 1.0
    exact = SpectralPropagator(initial_joint_state(2, field_state)).state_at(gt)
    closed = evolve_n2_closed_form(field_state, gt)
    assert closed.amplitude(2, 0) == pytest.approx(exact.amplitude(2, 0), abs=1e-12)

    # c(2, 0) with the alternative coefficient
    printed = c1_coefficient_as_printed(0) * (np.cos(np.sqrt(6.0) * gt) - 1.0)
    assert abs(printed - exact.amplitude(2, 0)) > 0.05


def test_coefficients_differ_for_every_k():
    for k in range(10):
        assert c1_coefficient(k) > c1_coefficient_as_printed(k)
    assert c1_coefficient(0) == pytest.approx(np.sqrt(2.0) / 3.0)


def test_unit_norm():
    field_state = coherent_coefficients(0.9)
    for gt in (0.0, 1.0, 10.0):
        amplitudes = evolve_n2_closed_form(field_state, gt).amplitudes
        assert np.vdot(amplitudes, amplitudes).real == pytest.approx(1.0, abs=1e-12)


def test_other_atom_numbers_rejected():
    with pytest.raises(ConfigurationError):
        evolve_n2_closed_form(coherent_coefficients(0.4), 1.0, n_atoms=3)
