import json
import logging

import pytest

from src.core.config import load_settings
from src.core.errors import (
    AttrankError,
    ConfigError,
    DataLoadError,
    InputPathError,
    MissingArtifactError,
)
from src.core.jsonl import dumps_record, iter_records, write_records
from src.core.logging import ROOT_LOGGER_NAME, get_logger, setup_logging


@pytest.fixture(autouse=True)
def _isolated_environment(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("ATTRANK_SEED", "ATTRANK_WORKERS", "ATTRANK_MATCHER__THRESHOLD"):
        monkeypatch.delenv(name, raising=False)


class TestSettings:
    def test_defaults(self):
        settings = load_settings()
        assert settings.matcher.threshold == 0.75
        assert settings.matcher.per_sentence_top == 2
        assert settings.ranker.top_k == 5
        assert settings.textrank.window == 4
        assert settings.textrank.top_keywords == 50
        assert settings.embedding.ngram_min == 3
        assert settings.embedding.ngram_max == 6

    def test_toml_paths_are_relative_to_file(self, tmp_path):
        config_dir = tmp_path / "conf"
        config_dir.mkdir()
        path = config_dir / "pipeline.toml"
        path.write_text(
            '[paths]\ncategories = "data/categories.jsonl"\nworkdir = "out"\n'
            "[matcher]\nthreshold = 0.6\n",
            encoding="utf-8",
        )
        settings = load_settings(path)
        assert settings.paths.categories == (config_dir / "data" / "categories.jsonl").resolve()
        assert settings.paths.workdir == (config_dir / "out").resolve()
        assert settings.matcher.threshold == 0.6

    def test_overrides_win(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"matcher": {"threshold": 0.6}, "workers": 2}))
        settings = load_settings(path, {"matcher": {"threshold": 0.9}})
        assert settings.matcher.threshold == 0.9
        assert settings.workers == 2

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("ATTRANK_MATCHER__THRESHOLD", "0.8")
        assert load_settings().matcher.threshold == 0.8

    def test_seed_propagates(self):
        assert load_settings(overrides={"seed": 9}).embedding.seed == 9

    @pytest.mark.parametrize(
        "overrides",
        [
            {"matcher": {"threshold": 2.0}},
            {"ranker": {"top_k": 0}},
            {"embedding": {"ngram_min": 7, "ngram_max": 3}},
            {"ranker": {"count_unit": "sentences"}},
        ],
    )
    def test_invalid_values(self, overrides):
        with pytest.raises(ConfigError) as error:
            load_settings(overrides=overrides)
        assert error.value.exit_code == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_settings(tmp_path / "missing.toml")

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("[matcher\nthreshold = ", encoding="utf-8")
        with pytest.raises(ConfigError, match="Invalid configuration file"):
            load_settings(path)


class TestErrors:
    def test_data_error_location(self, tmp_path):
        error = DataLoadError("bad record", tmp_path / "a.jsonl", 3)
        assert str(error) == f"{tmp_path / 'a.jsonl'}:3: bad record"
        assert error.exit_code == 2

    def test_exit_codes(self, tmp_path):
        assert ConfigError("x").exit_code == 1
        assert InputPathError(tmp_path / "x", "categories").exit_code == 2
        missing = MissingArtifactError(tmp_path / "vs.jsonl", "preprocess")
        assert isinstance(missing, AttrankError)
        assert "'preprocess'" in str(missing)


class TestJsonl:
    def test_write_then_read(self, tmp_path):
        path = tmp_path / "sub" / "records.jsonl"
        assert write_records(path, [{"a": 1}, {"b": "é"}]) == 2
        assert list(iter_records(path)) == [(1, {"a": 1}), (2, {"b": "é"})]

    def test_blank_lines_keep_numbering(self, tmp_path):
        path = tmp_path / "records.jsonl"
        path.write_text('{"a": 1}\n\n{"a": 2}\n', encoding="utf-8")
        assert [number for number, _ in iter_records(path)] == [1, 3]

    def test_non_object_line(self, tmp_path):
        path = tmp_path / "records.jsonl"
        path.write_text('{"a": 1}\n[1, 2]\n', encoding="utf-8")
        with pytest.raises(DataLoadError) as error:
            list(iter_records(path))
        assert error.value.line_number == 2

    def test_invalid_utf8_line(self, tmp_path):
        path = tmp_path / "records.jsonl"
        path.write_bytes(b'{"a": 1}\n{"b": "\xff\xfe"}\n')
        with pytest.raises(DataLoadError, match="invalid UTF-8") as error:
            list(iter_records(path))
        assert error.value.line_number == 2
        assert error.value.exit_code == 2

    def test_dumps_keeps_unicode(self):
        assert dumps_record({"name": "café", "n": 1}) == '{"name": "café", "n": 1}'


class TestLogging:
    def test_setup_is_idempotent(self):
        logger = setup_logging(ROOT_LOGGER_NAME, "debug")
        logger = setup_logging(ROOT_LOGGER_NAME, "WARNING")
        assert len(logger.handlers) == 1
        assert logger.level == logging.WARNING
        assert logger.propagate is False

    def test_unknown_level_defaults_to_info(self):
        assert setup_logging(ROOT_LOGGER_NAME, "chatty").level == logging.INFO

    def test_component_loggers_are_children(self):
        assert get_logger("matcher").name == "attrank.matcher"
