import logging

import pytest

from kcbs_lab.common.logger import logger, resolve_log_level


class TestLogLevel:
    @pytest.mark.parametrize(
        "name, expected",
        [
            ("DEBUG", logging.DEBUG),
            ("warning", logging.WARNING),
            (" error ", logging.ERROR),
            (None, logging.INFO),
            ("", logging.INFO),
            ("verbose", logging.INFO),
        ],
    )
    def test_resolve_log_level(self, name: str | None, expected: int):
        """
        Tests level name parsing, with unknown or missing names falling back to INFO
        """
        assert resolve_log_level(name) == expected

    def test_logger_configuration(self):
        """
        Tests that the shared logger writes to stderr and does not propagate
        """
        assert logger.name == "kcbs"
        assert not logger.propagate
        assert any(getattr(handler, "stream", None) is not None for handler in logger.handlers)
