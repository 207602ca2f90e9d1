"""
Test cases for settings, logging setup and file helpers.
"""
import json
import logging

import pytest
from pydantic import ValidationError

from configs.logging_config import get_logger, setup_logging
from configs.settings import PlannerSettings, Settings, load_settings_from_file
from exceptions import ConfigurationError, OutputError
from services.utils import FileUtils, PerformanceTimer, load_config


def test_defaults():
    settings = Settings()
    planner = settings.get_planner_config()
    assert planner["eta_fraction"] == 0.1
    assert planner["gamma_multiplier"] == 1.1
    assert planner["index_backend"] == "kd"
    assert settings.get_bench_config()["oracle_resolution"] == 512
    assert set(settings.get_logging_config()) == {"level", "log_file", "max_file_size", "backup_count", "json_format"}


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("OPTRRT_THREADS", "1")
    monkeypatch.setenv("OPTRRT_PLANNER_RRG_QUERY_STRIDE", "7")
    monkeypatch.setenv("OPTRRT_LOG_LEVEL", "DEBUG")
    settings = Settings()
    assert settings.worker_count() == 1
    assert settings.planner.rrg_query_stride == 7
    assert settings.get_logging_config()["level"] == "DEBUG"


def test_invalid_environment_is_rejected(monkeypatch):
    monkeypatch.setenv("OPTRRT_PLANNER_INDEX_BACKEND", "octree")
    with pytest.raises(ValidationError):
        PlannerSettings()


def test_settings_from_env_file(tmp_path):
    env_file = tmp_path / "bench.env"
    env_file.write_text("OPTRRT_THREADS=2\nOPTRRT_APP_NAME=bench\n", encoding="utf-8")
    settings = load_settings_from_file(str(env_file))
    assert settings.threads == 2
    assert settings.app_name == "bench"


def test_json_logging_to_file(tmp_path):
    log_file = tmp_path / "logs" / "optrrt.log"
    setup_logging(level="INFO", log_file=str(log_file), json_format=True)
    try:
        get_logger("tests").info("Trial finished", trial=3)
        with PerformanceTimer("unit", size=1):
            pass
        for handler in logging.getLogger().handlers:
            handler.flush()
        events = [json.loads(line.split(" - ")[-1]) for line in log_file.read_text(encoding="utf-8").splitlines()]
    finally:
        setup_logging(level="WARNING")
    assert {"event": "Trial finished", "trial": 3}.items() <= events[0].items()
    assert any(e.get("operation") == "unit" and "duration_seconds" in e for e in events)


def test_load_config_formats(tmp_path):
    yaml_file = tmp_path / "spec.yaml"
    yaml_file.write_text("trials: 2\nplanners: [rrt]\n", encoding="utf-8")
    assert load_config(str(yaml_file)) == {"trials": 2, "planners": ["rrt"]}

    with pytest.raises(ConfigurationError):
        load_config(str(tmp_path / "spec.toml"))
    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_config(str(listing))


def test_load_config_read_failures_are_configuration_errors(tmp_path):
    """Unreadable input is a configuration problem, never an output error."""
    with pytest.raises(ConfigurationError) as excinfo:
        load_config(str(tmp_path / "missing.json"))
    assert not isinstance(excinfo.value, OutputError)
    assert "missing.json" in str(excinfo.value)

    binary = tmp_path / "binary.json"
    binary.write_bytes(b"\xff\xfe\x00{")
    with pytest.raises(ConfigurationError):
        load_config(str(binary))


def test_json_output_is_canonical(tmp_path):
    path = tmp_path / "nested" / "out.json"
    FileUtils.write_json_file(str(path), {"b": 1, "a": [1.5, None]})
    assert path.read_bytes() == b'{\n  "a": [\n    1.5,\n    null\n  ],\n  "b": 1\n}\n'
    with pytest.raises(ValueError):
        FileUtils.write_json_file(str(path), {"cost": float("inf")})
