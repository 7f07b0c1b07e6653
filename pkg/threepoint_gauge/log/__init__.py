import os, sys, logging, json, threading
from fractions import Fraction
from threepoint_gauge import config
from logging.handlers import TimedRotatingFileHandler
from option import NONE, Option

LOG_PATH            = config.LOG_PATH
LOG_LEVEL           = config.LOG_LEVEL
LOG_ROTATION_WHEN   = config.LOG_ROTATION_WHEN
LOG_ROTATION_INTERVAL = config.LOG_ROTATION_INTERVAL
LOG_TO_FILE         = config.LOG_TO_FILE
LOG_ERROR_FILE      = config.LOG_ERROR_FILE


def _json_default(value):
    # exact scalars travel as "p/q" strings, never as floats
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


class JsonFormatter(logging.Formatter):
    """
    JSON formatter for log records.

    Dict messages are merged into the record payload next to timestamp, level,
    logger name and thread name; any other message is stored under `message`.
    """

    def format(self, record):
        """
        Format the log record as a JSON string.

        Args:
            record (LogRecord): The log record instance.

        Returns:
            str: A JSON-formatted log line.
        """
        log_data = {
            'timestamp': self.formatTime(record),
            'level': record.levelname,
            'logger_name': record.name,
            "thread_name": threading.current_thread().name
        }
        if isinstance(record.msg, dict):
            log_data.update(record.msg)
        else:
            log_data['message'] = record.getMessage()

        return json.dumps(log_data, default=_json_default)


class Log(logging.Logger):
    """
    Logger with JSON output to stderr and, when enabled in `config`, a rotating file
    plus an error-only file.

    Verification runs are long; every suite and harness step reports one structured
    event through this class so a run can be replayed from the log alone.
    """

    def __init__(self,
                formatter: logging.Formatter = JsonFormatter(),
                name: str = "threepoint",
                level: int = getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                path: str = LOG_PATH,
                disabled: bool = False,
                console_handler_filter=lambda record: record.levelno == logging.DEBUG,
                file_handler_filter=lambda record: record.levelno >= logging.INFO,
                console_handler_level: int = logging.DEBUG,
                file_handler_level: int = logging.INFO,
                error_log: bool = LOG_ERROR_FILE,
                filename: Option[str] = NONE,
                to_file: bool = LOG_TO_FILE,
                when: str = LOG_ROTATION_WHEN,
                interval: int = LOG_ROTATION_INTERVAL
                ):
        """
        Initialize the logger.

        Args:
            formatter (logging.Formatter): Formatter shared by all handlers.
            name (str): Name of the logger.
            level (int): Logging level for the logger.
            path (str): Folder of the log files, created on demand.
            disabled (bool): If True, no handler is attached.
            console_handler_filter (callable): Filter for console logs.
            file_handler_filter (callable): Filter for file logs.
            console_handler_level (int): Minimum level for console logs.
            file_handler_level (int): Minimum level for file logs.
            error_log (bool): Whether to add the error-only file.
            filename (Option[str]): Base file name, defaults to the logger name.
            to_file (bool): If True, enables the rotating file.
            when (str): TimedRotatingFileHandler `when` parameter.
            interval (int): TimedRotatingFileHandler `interval` parameter.
        """
        super().__init__(name, level)
        if disabled:
            return

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        console_handler.setLevel(console_handler_level)
        console_handler.addFilter(console_handler_filter)
        self.addHandler(console_handler)

        if (to_file or error_log) and not os.path.exists(path):
            os.makedirs(path)
        base = f"{path}/{filename.unwrap_or(name)}"

        if to_file:
            file_handler = TimedRotatingFileHandler(filename=base, when=when, interval=interval)
            file_handler.setFormatter(formatter)
            file_handler.setLevel(file_handler_level)
            file_handler.addFilter(file_handler_filter)
            self.addHandler(file_handler)

        if error_log:
            error_file_handler = logging.FileHandler(filename=f"{base}.error")
            error_file_handler.setFormatter(formatter)
            error_file_handler.setLevel(logging.ERROR)
            error_file_handler.addFilter(lambda record: record.levelno == logging.ERROR)
            self.addHandler(error_file_handler)
