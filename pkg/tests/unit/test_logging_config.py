"""
Unit tests for log formatting.
"""
import io
import json
import logging

import pytest

from scox.logging_config import ConsoleFormatter, JSONFormatter, setup_logging


def make_record(**extra):
    record = logging.LogRecord("scox.services.rewrite", logging.INFO, __file__, 10, "normalized %s", ("A2",), None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


@pytest.mark.unit
class TestFormatters:

    def test_json_carries_extra_fields(self):
        data = json.loads(JSONFormatter().format(make_record(steps=3)))
        assert data["message"] == "normalized A2"
        assert data["level"] == "INFO"
        assert data["steps"] == 3
        assert "args" not in data

    def test_console_appends_extra_fields(self):
        line = ConsoleFormatter().format(make_record(system="A2", steps=3))
        assert line.endswith("normalized A2 [steps=3 system=A2]")
        assert "\033[" not in line

    def test_console_color(self):
        assert "\033[32m" in ConsoleFormatter(use_color=True).format(make_record())


@pytest.mark.unit
class TestSetupLogging:

    def test_logs_go_to_given_stream(self):
        stream = io.StringIO()
        setup_logging("INFO", "production", stream=stream)
        logging.getLogger("scox.test").info("hello", extra={"system": "B2"})

        record = json.loads(stream.getvalue().splitlines()[-1])
        assert record["message"] == "hello"
        assert record["system"] == "B2"

    def test_level_filters(self):
        stream = io.StringIO()
        setup_logging("warning", "development", stream=stream)
        logging.getLogger("scox.test").info("hidden")
        assert "hidden" not in stream.getvalue()

    def test_file_handler(self, tmp_path):
        path = tmp_path / "logs" / "scox.log"
        setup_logging("INFO", "development", log_file=str(path), stream=io.StringIO())
        logging.getLogger("scox.test").info("to file")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert json.loads(path.read_text().splitlines()[-1])["message"] == "to file"
