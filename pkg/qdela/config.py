"""
Experiment configuration files.

    [experiment]
    domain = sphere
    behaviour = subset
    dim = 8
    archive_size = 1000
    sampler = qd-isolinedd

plus optional [operator] and [ela] sections. Unknown sections and keys are
errors reported with their line.
"""

import configparser
import errno
import os
import re

from kivy.config import ConfigParser
from kivy.logger import Logger

from .exceptions import ConfigError
from .harness import ExperimentConfig
from .utils import parse_int, str_to_bool, str_to_list

SECTIONS = {
    'experiment': ('domain', 'behaviour', 'dim', 'archive_size', 'sampler', 'budget', 'batch',
                   'runs', 'base_seed', 'checkpoints', 'selector', 'save_datasets'),
    'operator': ('gaussian_sigma', 'isoline_sigma1', 'isoline_sigma2'),
    'ela': ('conv_pairs', 'local_starts', 'local_max_evals', 'level_folds'),
}
REQUIRED = ('domain', 'behaviour', 'dim', 'archive_size', 'sampler')

_SECTION_OF = {key: section for section, keys in SECTIONS.items() for key in keys}
_SECTION_RE = re.compile(r'^\s*\[([^\]]+)\]')
_KEY_RE = re.compile(r'^\s*([^=:\s#;][^=:]*?)\s*[=:]')


def _parse_float(text):
    return float(text)


def _parse_ints(text):
    return tuple(parse_int(item) for item in str_to_list(text))


def _parse_names(text):
    return tuple(str_to_list(text))


def _parse_bool(text):
    if text.strip().lower() not in ('0', '1', 'true', 'false', 'yes', 'no', 'on', 'off'):
        raise ValueError(f'{text!r} is not a boolean')
    return str_to_bool(text.strip())


def _parse_optional_int(text):
    return parse_int(text) if text.strip() else None


PARSERS = {
    'domain': str.strip,
    'behaviour': str.strip,
    'sampler': str.strip,
    'dim': parse_int,
    'archive_size': parse_int,
    'budget': parse_int,
    'batch': parse_int,
    'runs': parse_int,
    'base_seed': parse_int,
    'checkpoints': _parse_ints,
    'selector': _parse_names,
    'save_datasets': _parse_bool,
    'gaussian_sigma': _parse_float,
    'isoline_sigma1': _parse_float,
    'isoline_sigma2': _parse_float,
    'conv_pairs': parse_int,
    'local_starts': _parse_optional_int,
    'local_max_evals': parse_int,
    'level_folds': parse_int,
}


def _locate(lines, section=None, key=None):
    """1-based line of a section header, or of a key inside a section"""
    current = None
    for lineno, line in enumerate(lines, start=1):
        match = _SECTION_RE.match(line)
        if match:
            current = match.group(1).strip()
            if key is None and current == section:
                return lineno
            continue
        if key is not None and current == section:
            match = _KEY_RE.match(line)
            if match and match.group(1).strip().lower() == key:
                return lineno
    return None


def _parser_error_line(exc):
    lineno = getattr(exc, 'lineno', None)
    if lineno is None and getattr(exc, 'errors', None):
        lineno = exc.errors[0][0]
    return lineno


def load_config(path) -> ExperimentConfig:
    """
    Reads an experiment configuration. Raises FileNotFoundError for a missing
    file and ConfigError for anything malformed.
    """
    path = str(path)
    if not os.path.isfile(path):
        raise FileNotFoundError(errno.ENOENT, 'configuration file not found', path)
    with open(path, 'r', encoding='utf-8') as handle:
        lines = handle.read().splitlines()

    parser = ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(exc.message.splitlines()[0] if hasattr(exc, 'message') else str(exc),
                          _parser_error_line(exc))

    default_line = _locate(lines, configparser.DEFAULTSECT)
    if default_line is not None:
        raise ConfigError(f'unknown section [{configparser.DEFAULTSECT}]', default_line)

    values = {}
    for section in parser.sections():
        if section not in SECTIONS:
            raise ConfigError(f'unknown section [{section}]', _locate(lines, section))
        for key, text in parser.items(section):
            if key not in SECTIONS[section]:
                raise ConfigError(f'unknown key {key!r} in [{section}]', _locate(lines, section, key))
            try:
                values[key] = PARSERS[key](text)
            except ValueError as exc:
                raise ConfigError(f'{key}: {exc}', _locate(lines, section, key))

    for key in REQUIRED:
        if key not in values:
            raise ConfigError(f'missing required key {key!r} in [{_SECTION_OF[key]}]')
    try:
        config = ExperimentConfig(**values)
    except ConfigError as exc:
        lineno = _locate(lines, _SECTION_OF.get(exc.key), exc.key) if exc.key else None
        raise ConfigError(exc.message, lineno, exc.key)
    Logger.debug(f'Config: loaded {path}')
    return config


def _format_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (tuple, list)):
        return ', '.join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def save_config(config: ExperimentConfig, path):
    """Writes the resolved configuration, every default materialised, in a fixed key order"""
    parser = ConfigParser()
    for section, keys in SECTIONS.items():
        parser.add_section(section)
        for key in keys:
            parser.set(section, key, _format_value(getattr(config, key)))
    parser.filename = str(path)
    if not parser.write():
        raise OSError(f'unable to write configuration {path}')
    Logger.info(f'Config: resolved configuration written to {path}')
