import json
from pathlib import Path

import pytest

from qgraph.config import Settings, get_settings, load_settings, set_settings
from qgraph.exceptions import ValidationError


def test_defaults_without_config_file(monkeypatch):
    monkeypatch.setattr("os.cpu_count", lambda: 6)
    settings = load_settings()
    assert settings.threads == 6
    assert settings.time_budget_secs is None
    assert settings.cache_dir is None and settings.g10_witness is None


def test_config_file_values(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"threads": 2, "time_budget_secs": 5, "cache_dir": str(tmp_path / "cache")}))
    settings = load_settings(str(config))
    assert settings.threads == 2
    assert settings.time_budget_secs == 5.0
    assert settings.cache_dir == tmp_path / "cache"


def test_environment_overrides_file(tmp_path, monkeypatch):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"threads": 2}))
    monkeypatch.setenv("QGRAPH_CONFIG", str(config))
    monkeypatch.setenv("QGRAPH_THREADS", "3")
    monkeypatch.setenv("QGRAPH_TIME_BUDGET_SECS", "1.5")
    monkeypatch.setenv("QGRAPH_G10_WITNESS", "~/g10.json")
    settings = load_settings()
    assert settings.threads == 3
    assert settings.time_budget_secs == 1.5
    assert settings.g10_witness == Path("~/g10.json").expanduser()


@pytest.mark.parametrize("name,value", [
    ("QGRAPH_THREADS", "many"),
    ("QGRAPH_THREADS", "0"),
    ("QGRAPH_TIME_BUDGET_SECS", "soon"),
    ("QGRAPH_TIME_BUDGET_SECS", "-1"),
])
def test_bad_environment_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError) as info:
        load_settings()
    assert info.value.validation_type == "config"


@pytest.mark.parametrize("text", ["{broken", "[1, 2]"])
def test_bad_config_files(tmp_path, text):
    config = tmp_path / "config.json"
    config.write_text(text)
    with pytest.raises(ValidationError):
        load_settings(str(config))


def test_with_overrides_skips_none():
    settings = Settings(threads=4).with_overrides(threads=None, time_budget_secs=2.0)
    assert settings.threads == 4
    assert settings.time_budget_secs == 2.0


def test_process_settings_are_loaded_lazily(monkeypatch):
    monkeypatch.setenv("QGRAPH_THREADS", "5")
    set_settings(None)
    assert get_settings().threads == 5
