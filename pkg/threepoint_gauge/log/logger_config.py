import logging
from threepoint_gauge import config
from threepoint_gauge.log import Log


THREEPOINT_DEBUG = config.THREEPOINT_DEBUG

_LOGGERS = {}


def console_handler_filter(lr: logging.LogRecord):
    if THREEPOINT_DEBUG:
        return True
    return lr.levelno in (logging.INFO, logging.ERROR, logging.WARNING)


def get_logger(name: str) -> Log:
    # one Log per name, otherwise handlers pile up on re-import
    if name not in _LOGGERS:
        _LOGGERS[name] = Log(name=name, console_handler_filter=console_handler_filter)
    return _LOGGERS[name]

# Logger genérico
L = get_logger("threepoint")
