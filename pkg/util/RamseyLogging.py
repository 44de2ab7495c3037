import logging
import logging.config
from pathlib import Path

_LOGGING_CONF = Path(Path(__file__).parent.parent, "logging.conf")
_DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def getLogger(name):
    """Returns the logger for a module. The entry point script passes __main__, which also configures
    the root logger from logging.conf at the repository root."""
    if name == "__main__":
        logger = logging.getLogger()
        if _LOGGING_CONF.exists():
            logging.config.fileConfig(_LOGGING_CONF, disable_existing_loggers=False)
        else:
            logging.basicConfig(level=logging.INFO, format=_DEFAULT_FORMAT)
    else:
        logger = logging.getLogger(name)
    return logger


def setLevel(levelname: str):
    logging.getLogger().setLevel(getattr(logging, str(levelname).upper(), logging.INFO))


def addLogHandler(handler, fmt: str = _DEFAULT_FORMAT):
    formatter = logging.Formatter(fmt)
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(formatter)
    logger = logging.getLogger()
    logger.addHandler(handler)
    return handler
