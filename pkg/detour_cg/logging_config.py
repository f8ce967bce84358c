import logging

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = "INFO") -> None:
    """Install a single stream handler on the package logger"""
    logger = logging.getLogger("detour_cg")
    logger.setLevel(level.upper())
    if not any(getattr(h, "_detour_cg", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._detour_cg = True
        logger.addHandler(handler)
