import pytest
from pydantic import ValidationError

from src.utils.settings import CONFIG_FILE, SqueezeSettings, get_settings


def test_defaults_from_config_file():
    settings = SqueezeSettings()
    assert CONFIG_FILE.exists()
    assert settings.truncation.eps_tail == 1e-12
    assert settings.time_grid.samples_per_period == 20
    assert settings.time_grid.batch_elements == 1_000_000
    assert settings.envelope.prominence == 1e-4
    assert settings.output.float_format == "%.12g"
    assert settings.threads == 0


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("TC_SQUEEZE_THREADS", "3")
    monkeypatch.setenv("TC_SQUEEZE_TRUNCATION__EPS_TAIL", "1e-10")
    settings = SqueezeSettings()
    assert settings.threads == 3
    assert settings.truncation.eps_tail == 1e-10
    assert settings.time_grid.samples_per_period == 20


def test_keyword_arguments_win(monkeypatch):
    monkeypatch.setenv("TC_SQUEEZE_THREADS", "3")
    assert SqueezeSettings(threads=5).threads == 5


def test_sampling_floor_enforced(monkeypatch):
    monkeypatch.setenv("TC_SQUEEZE_TIME_GRID__SAMPLES_PER_PERIOD", "10")
    with pytest.raises(ValidationError):
        SqueezeSettings()


def test_eps_tail_range():
    with pytest.raises(ValidationError):
        SqueezeSettings(truncation={"eps_tail": 0.5})


def test_cached_instance():
    assert get_settings() is get_settings()
