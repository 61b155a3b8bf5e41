import logging
import sys

DEFAULT_LOG_LEVEL = logging.INFO


def setup(argv=None):  # should be executed before any kivy import
    """
    Removes the global --silent / --verbose flags from argv (default sys.argv)
    and applies the log level they ask for.
    """
    argv = sys.argv if argv is None else argv
    log_level = DEFAULT_LOG_LEVEL

    if '--silent' in argv:
        argv.remove('--silent')
        log_level = logging.WARNING
    if '--verbose' in argv:
        argv.remove('--verbose')
        log_level = logging.DEBUG

    _setup_environment()
    _setup_logging(log_level)
    return argv


def _setup_environment():
    # the package sets the kivy switches on import
    import qdela  # noqa: F401


def _setup_logging(level):
    from kivy.config import Config
    level_name = logging._levelToName[level].lower()
    Config.set('kivy', 'log_level', level_name)

    from kivy.logger import Logger
    Logger.setLevel(level)
    Logger.debug(f'Setting log level to "{level_name}"')

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in root_logger.handlers:
        handler.setLevel(level)


if __name__ == '__main__':  # packaging entry point (pip / setuptools); not run on import
    from setuptools import setup as _package_setup

    _package_setup(
        name='qdela',
        version='0.1.0',
        packages=['qdela', 'qdela.ela'],
        py_modules=['main', 'setup'],
        python_requires='>=3.10',
        install_requires=['kivy', 'numpy', 'scipy', 'scikit-learn', 'matplotlib'],
    )
