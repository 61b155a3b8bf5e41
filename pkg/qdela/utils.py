import csv
import math

from . import FLOAT_FORMAT


def format_seconds(seconds: float) -> str:
    minutes = int(seconds // 60)
    secs = int(seconds % 60)
    if minutes:
        return f"{minutes}m {secs}s"
    return f'{secs}s'

def format_float(value) -> str:
    if value is None:
        return ''
    return format(float(value), FLOAT_FORMAT)


def parse_float(text):
    """Empty text reads as an undefined value"""
    text = text.strip()
    if not text:
        return None
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f'non-finite value {text!r}')
    return value

def parse_int(text) -> int:
    """Accepts integral floats such as '1e6'"""
    text = str(text).strip()
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if not value.is_integer():
            raise ValueError(f'{text!r} is not an integer')
        return int(value)

def str_to_list(v, default=None):
    if default is None: default = []
    if not v: return default
    if v[0] == '[' and v[-1] == ']': v = v[1:-1].strip()
    return [s.strip() for l in csv.reader([v], skipinitialspace=True) for s in l if s.strip()]

def str_to_bool(s):
    return not s.lower() in ('', '0', 'false', 'no', 'off', '-')
