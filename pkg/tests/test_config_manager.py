"""
Tests for configuration loading, environment overrides and RunConfig.
"""

import json
import logging

import pytest
from pydantic import ValidationError

from src.managers.config_manager import create_config_manager
from src.managers.logging_config_manager import APP_NAME, create_logging_config_manager
from src.models.enums import Orthography
from src.models.learning import RunConfig


@pytest.mark.unit
class TestConfigManager:
    def test_production_defaults(self, test_config_dir):
        config = create_config_manager(config_dir=test_config_dir, environment="production", load_env_file=False)
        assert config.get("teacher", "max_number") == 99
        assert config.get("learning", "max_leaves") == 3
        assert config.get("logging", "level") == "WARNING"
        assert config.get_validation_errors() == []

    def test_testing_overlay(self, config_manager):
        assert config_manager.is_testing()
        assert config_manager.get("teacher", "max_number") == 23
        assert config_manager.get("teacher", "orthography") == "paper"
        assert config_manager.get("logging", "level") == "DEBUG"

    def test_environment_variables_override(self, test_config_dir, monkeypatch):
        monkeypatch.setenv("NUMG_MAX_NUMBER", "40")
        monkeypatch.setenv("NUMG_ORTHOGRAPHY", "standard")
        monkeypatch.setenv("NUMG_SUBSTITUTIONS", json.dumps({"fourty": "forty", "eightt": "eight"}))
        config = create_config_manager(config_dir=test_config_dir, environment="testing", load_env_file=False)
        assert config.get("teacher", "max_number") == 40
        assert config.get("teacher", "orthography") == "standard"
        assert config.get("teacher", "substitutions")["eightt"] == "eight"

    @pytest.mark.parametrize(
        "variable,value,section,key,fallback",
        [
            ("NUMG_MAX_NUMBER", "250", "teacher", "max_number", 23),
            ("NUMG_MAX_NUMBER", "many", "teacher", "max_number", 23),
            ("NUMG_ORTHOGRAPHY", "phonetic", "teacher", "orthography", "paper"),
            ("NUMG_MAX_LEAVES", "0", "transducer", "max_leaves", 5),
        ],
    )
    def test_invalid_values_fall_back(self, test_config_dir, monkeypatch, variable, value, section, key, fallback):
        monkeypatch.setenv(variable, value)
        config = create_config_manager(config_dir=test_config_dir, environment="testing", load_env_file=False)
        assert config.get(section, key) == fallback
        assert any(error.startswith(f"{section}.{key}") for error in config.get_validation_errors())

    def test_unknown_environment_falls_back(self, test_config_dir):
        config = create_config_manager(config_dir=test_config_dir, environment="staging", load_env_file=False)
        assert config.get_environment() == "production"

    def test_dotenv_file_is_read(self, test_config_dir, tmp_path, monkeypatch):
        monkeypatch.delenv("NUMG_MAX_NUMBER", raising=False)
        (tmp_path / ".env").write_text("NUMG_MAX_NUMBER=17\n", encoding="utf-8")
        monkeypatch.chdir(tmp_path)
        config = create_config_manager(config_dir=test_config_dir, environment="testing")
        assert config.get("teacher", "max_number") == 17

    def test_missing_config_dir_uses_emergency_defaults(self, tmp_path):
        config = create_config_manager(config_dir=tmp_path, environment="production", load_env_file=False)
        assert config.get("transducer", "max_leaves") == 5
        assert config.get("learning", "licensee_stem") == "k"

    def test_sections_are_copies(self, config_manager):
        config_manager.get_section("teacher")["max_number"] = 1
        config_manager.to_dict()["learning"]["retry_cap"] = 0
        assert config_manager.get("teacher", "max_number") == 23
        assert config_manager.get("learning", "retry_cap") == 5

    def test_section_getters(self, config_manager):
        exported = config_manager.to_dict()
        assert set(exported) == {"teacher", "transducer", "learning", "logging"}
        assert config_manager.get_teacher_config() == exported["teacher"]
        assert config_manager.get_transducer_config()["chart_cap"] == 100000
        assert config_manager.get_learning_config()["licensee_stem"] == "k"
        assert config_manager.get_logging_config()["level"] == "DEBUG"


@pytest.mark.unit
class TestRunConfig:
    def test_from_config_with_overrides(self, config_manager):
        run_config = RunConfig.from_config(config_manager, max_number=12, orthography=None)
        assert run_config.max_number == 12
        assert run_config.orthography is Orthography.PAPER
        assert run_config.learner_max_leaves == 3
        assert run_config.max_leaves == 5

    def test_rejects_out_of_range(self, config_manager):
        with pytest.raises(ValidationError):
            RunConfig.from_config(config_manager, max_number=100)


@pytest.mark.unit
class TestLoggingConfigManager:
    def test_child_loggers_share_the_application_root(self, logging_manager):
        logger = logging_manager.get_logger("learner")
        assert logger.name == f"{APP_NAME}.learner"
        assert logging_manager.get_logger("learner") is logger

    def test_level_override_wins(self, config_manager):
        manager = create_logging_config_manager(config_manager, log_level="error")
        assert manager.get_level() == "ERROR"
        assert logging.getLogger(APP_NAME).level == logging.ERROR

    def test_success_level(self, config_manager, caplog):
        manager = create_logging_config_manager(config_manager, log_level="SUCCESS")
        assert logging.getLogger(APP_NAME).level == 25
        logger = manager.get_logger("cli")
        logger.propagate = True
        logging.getLogger(APP_NAME).propagate = True
        with caplog.at_level(25, logger=APP_NAME):
            logger.success("trained")
        assert [record.levelname for record in caplog.records] == ["SUCCESS"]

    def test_json_file_handler(self, config_manager, tmp_path):
        log_file = tmp_path / "logs" / "numg.jsonl"
        manager = create_logging_config_manager(
            config_manager, log_level="WARNING", log_file=str(log_file), console_output=False
        )
        manager.get_logger("transducer").debug("chart closed")
        for handler in logging.getLogger(APP_NAME).handlers:
            handler.flush()
        record = json.loads(log_file.read_text(encoding="utf-8").splitlines()[-1])
        assert record["logger"] == f"{APP_NAME}.transducer"
        assert record["level"] == "DEBUG"
        assert record["message"] == "chart closed"

    def test_handlers_are_not_stacked(self, config_manager):
        create_logging_config_manager(config_manager)
        create_logging_config_manager(config_manager)
        assert len(logging.getLogger(APP_NAME).handlers) == 1
