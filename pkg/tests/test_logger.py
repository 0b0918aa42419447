"""
로깅 유틸리티 테스트
"""

import logging
import logging.handlers

from src.Utils import setup_logging, get_logger, LoggerMixin


class Worker(LoggerMixin):
    pass


def test_module_logger_lives_under_root():
    assert get_logger('src.Service.detect_service').name == 'wmforge.Service.detect_service'
    assert get_logger('custom').name == 'wmforge.custom'


def test_mixin_logger_named_after_class():
    assert Worker().logger.name == 'wmforge.Worker'


def test_setup_logging_does_not_stack_handlers(tmp_path):
    setup_logging(log_level='debug', log_dir=str(tmp_path))
    logger = setup_logging(log_level='debug', log_dir=str(tmp_path))

    handlers = logger.handlers
    assert len(handlers) == 2
    assert logger.level == logging.DEBUG
    rotating = [h for h in handlers if isinstance(h, logging.handlers.RotatingFileHandler)]
    assert len(rotating) == 1
    console = [h for h in handlers if not isinstance(h, logging.handlers.RotatingFileHandler)]
    assert console[0].level == logging.ERROR
    assert any(p.name.startswith("wmforge_") for p in tmp_path.iterdir())

    for handler in handlers:
        handler.close()
        logger.removeHandler(handler)
