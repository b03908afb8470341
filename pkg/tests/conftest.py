import os

os.environ.setdefault("POWERTOOLS_TRACE_DISABLED", "1")
os.environ.setdefault("POWERTOOLS_LOG_LEVEL", "WARNING")

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from src.hilbert.basis import initial_joint_state  # noqa: E402
from src.hilbert.field_states import coherent_coefficients, fock_coefficients  # noqa: E402
from src.utils.settings import get_settings  # noqa: E402


@pytest.fixture(autouse=True)
def clear_settings_cache():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def coherent_state():
    def make(n_atoms, alpha, **kwargs):
        return initial_joint_state(n_atoms, coherent_coefficients(alpha, **kwargs))
    return make


@pytest.fixture
def fock_state():
    def make(n_atoms, n, n_max=None):
        return initial_joint_state(n_atoms, fock_coefficients(n, n_max))
    return make


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
