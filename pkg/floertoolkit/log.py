##### Registro #####

import logging
import os
import sys
from logging.handlers import TimedRotatingFileHandler

PACKAGE = 'floertoolkit'
FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class Log:
    """Logger con nombre para los módulos del toolkit.

    Los mensajes van siempre a stderr; stdout queda reservado para las tablas y las líneas
    ``CHECK``. El nivel sale de ``log_level`` o de la variable LOG_LEVEL (WARNING por defecto).
    Si se define LOG_FILE, o se pide ``log_to_file``, se añade un archivo rotado a medianoche.
    """

    def __init__(self, name=PACKAGE, log_level=None, log_to_file=None, log_filename=None):
        """Inicializa el logger.

        Args:
            name (str): Nombre del logger (normalmente ``__name__`` del módulo).
            log_level (str, opcional): Nivel ('DEBUG', 'INFO', 'WARNING', ...).
            log_to_file (bool, opcional): Fuerza o desactiva el archivo; por defecto depende de LOG_FILE.
            log_filename (str, opcional): Archivo destino; por defecto LOG_FILE o 'floertoolkit.log'.
        """
        self.logger = logging.getLogger(name)
        self.logger.handlers = []
        self.logger.propagate = False
        self.logger.setLevel((log_level or os.getenv('LOG_LEVEL', 'WARNING')).upper())

        formatter = logging.Formatter(FORMAT)
        stderr_handler = logging.StreamHandler(sys.stderr)
        stderr_handler.setFormatter(formatter)
        self.logger.addHandler(stderr_handler)

        log_filename = log_filename or os.getenv('LOG_FILE')
        if log_to_file or (log_to_file is None and log_filename):
            file_handler = TimedRotatingFileHandler(log_filename or f'{PACKAGE}.log', when="midnight", interval=1)
            file_handler.suffix = "%Y%m%d"
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

    def set_level(self, level) -> None:
        self.logger.setLevel(str(level).upper())

    def __getattr__(self, name):
        """Delegación al ``logging.Logger`` subyacente (info, error, debug, ...)."""
        return getattr(self.logger, name)


def set_package_level(level) -> None:
    """Aplica el nivel a todos los loggers ``floertoolkit.*`` ya creados."""
    level = str(level).upper()
    for name in list(logging.Logger.manager.loggerDict):
        if name == PACKAGE or name.startswith(f'{PACKAGE}.'):
            logging.getLogger(name).setLevel(level)


log = Log()
