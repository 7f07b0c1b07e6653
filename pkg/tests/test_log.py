import json
import logging
from fractions import Fraction
from threepoint_gauge.log import JsonFormatter
from threepoint_gauge.log.logger_config import get_logger


def test_json_formatter_keeps_exact_scalars():
    record = logging.LogRecord("threepoint", logging.INFO, __file__, 1,
                               {"event": "VERIFY.MU.DONE", "value": Fraction(-1, 6)}, None, None)
    payload = json.loads(JsonFormatter().format(record))
    assert payload["event"] == "VERIFY.MU.DONE"
    assert payload["value"] == "-1/6"
    assert payload["level"] == "INFO"
    assert payload["logger_name"] == "threepoint"


def test_plain_messages():
    record = logging.LogRecord("threepoint", logging.WARNING, __file__, 1, "hola %s", ("mundo",), None)
    assert json.loads(JsonFormatter().format(record))["message"] == "hola mundo"


def test_get_logger_is_cached():
    assert get_logger("threepoint.test") is get_logger("threepoint.test")
    assert len(get_logger("threepoint.test").handlers) == 1
