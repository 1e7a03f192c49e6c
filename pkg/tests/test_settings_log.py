import io
import logging
import re

import pytest

from kronholm.errors import ConfigError
from kronholm.log import add_log_item, get_logger, setup_logging
from kronholm.settings import (
    AppConfig,
    load_settings,
    resolve_margin,
    resource_path,
    svg_unit,
)


@pytest.fixture(autouse=True)
def no_margin_env(monkeypatch):
    monkeypatch.delenv(AppConfig.MARGIN_ENV, raising=False)


def test_margin_precedence(monkeypatch):
    assert resolve_margin() == AppConfig.DEFAULT_MARGIN
    assert resolve_margin(None, {"margin": 6}) == 6
    monkeypatch.setenv(AppConfig.MARGIN_ENV, "3")
    assert resolve_margin(None, {"margin": 6}) == 3
    assert resolve_margin(7, {"margin": 6}) == 7


def test_blank_environment_is_ignored(monkeypatch):
    monkeypatch.setenv(AppConfig.MARGIN_ENV, "  ")
    assert resolve_margin() == AppConfig.DEFAULT_MARGIN


@pytest.mark.parametrize("raw", ["x", "-1", "2.5"])
def test_bad_margin(monkeypatch, raw):
    monkeypatch.setenv(AppConfig.MARGIN_ENV, raw)
    with pytest.raises(ConfigError):
        resolve_margin()


def test_load_settings(tmp_path):
    path = tmp_path / "s.json"
    path.write_text('{"margin": 2, "svg_unit": 30}', encoding="utf-8")
    assert load_settings(str(path)) == {"margin": 2, "svg_unit": 30}


def test_unknown_keys_dropped(tmp_path):
    path = tmp_path / "s.json"
    path.write_text('{"margin": 2, "colour": "red"}', encoding="utf-8")
    assert load_settings(str(path)) == {"margin": 2}


def test_settings_errors(tmp_path):
    assert load_settings(None) == {}
    with pytest.raises(ConfigError):
        load_settings(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_settings(str(bad))
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_settings(str(bad))


def test_svg_unit():
    assert svg_unit() == AppConfig.SVG_UNIT
    assert svg_unit({"svg_unit": "12"}) == 12
    with pytest.raises(ConfigError):
        svg_unit({"svg_unit": 0})


def test_resource_path_points_at_corpus():
    assert resource_path("corpus/rp2tw.json").endswith("rp2tw.json")


def test_config_error_exit_code():
    assert ConfigError("x").exit_code == 2


def test_logger_names():
    assert get_logger("kronholm.attach").name == "kronholm.attach"
    assert get_logger("tools").name == "kronholm.tools"


def test_log_line_format():
    stream = io.StringIO()
    setup_logging(logging.INFO, color=False, stream=stream)
    add_log_item("stage 2 done")
    add_log_item("hidden", level="blue")
    get_logger("kronholm.oracle").warning("two discrepancies")
    lines = stream.getvalue().splitlines()
    assert len(lines) == 2
    assert re.fullmatch(r"\[\d\d:\d\d:\d\d\] stage 2 done", lines[0])
    assert lines[1].endswith("two discrepancies")


def test_log_colour():
    stream = io.StringIO()
    setup_logging(logging.DEBUG, color=True, stream=stream)
    add_log_item("boom", level="error")
    text = stream.getvalue()
    assert text.startswith(AppConfig.LOG_COLORS["ERROR"])
    assert AppConfig.LOG_RESET in text
    setup_logging(logging.WARNING, color=False, stream=io.StringIO())
