import logging

import pytest

from floertoolkit import Log, log
from floertoolkit.log import set_package_level


@pytest.fixture
def captured():
    records = []

    class Collector(logging.Handler):
        def emit(self, record):
            records.append(record)

    handler = Collector()
    log.logger.addHandler(handler)
    yield records
    log.logger.removeHandler(handler)


def test_logging_info(captured):
    log.set_level('INFO')
    log.info('Complex loaded')
    assert [r.getMessage() for r in captured] == ['Complex loaded']


def test_logging_below_level_is_dropped(captured):
    log.set_level('WARNING')
    log.info('hidden')
    log.error('Differential does not square to zero')
    assert [r.levelname for r in captured] == ['ERROR']


def test_logger_does_not_propagate():
    assert Log('floertoolkit.sample').logger.propagate is False


def test_level_from_environment(monkeypatch):
    monkeypatch.setenv('LOG_LEVEL', 'debug')
    assert Log('floertoolkit.env_sample').logger.level == logging.DEBUG


def test_logging_to_file(tmp_path):
    logfile = tmp_path / "floer.log"
    file_log = Log('floertoolkit.file_sample', log_level='INFO', log_to_file=True, log_filename=str(logfile))
    file_log.error('Written to file')
    for handler in file_log.logger.handlers:
        handler.flush()
    assert 'Written to file' in logfile.read_text()


def test_set_package_level():
    child = Log('floertoolkit.level_sample', log_level='ERROR')
    set_package_level('debug')
    assert child.logger.level == logging.DEBUG
    set_package_level('WARNING')
