"""Utility classes and methods.

Logging, save directories, key = value configuration files, rational
JSON helpers and the exception hierarchy shared by every module.
"""
import logging
import os
import re
import sys
import tqdm
import ujson as json

from fractions import Fraction


class ComputationError(RuntimeError):
    """Base class of every error raised by a library computation."""


class ZeroDenominator(ComputationError):
    pass


class NotExpandable(ComputationError):
    pass


class PoleAtPoint(ComputationError):
    pass


class NonMultipleExponent(ComputationError):
    pass


class RangeError(ComputationError):
    pass


class SizeLimit(ComputationError):
    pass


class ContainmentError(ComputationError):
    pass


class NotHorizontalStrip(ComputationError):
    pass


class SingularMatrix(ComputationError):
    pass


class DimensionLimit(ComputationError):
    pass


class UnboundedInput(ComputationError):
    pass


class InterpolationInconsistent(ComputationError):
    pass


class ZeroCoefficient(ComputationError):
    pass


class NotImplementedForParameters(ComputationError):
    pass


class RouteMismatch(ComputationError):
    """The matrix route and the lattice route of a Hecke action disagree."""


class UsageError(ValueError):
    """Bad command line or configuration input (exit code 2)."""


_progress = {'enabled': False}


def set_progress(enabled):
    """Turn `tqdm` progress bars for long enumerations on or off."""
    _progress['enabled'] = bool(enabled)


def progress(iterable, total=None, desc=None):
    """Wrap `iterable` in a progress bar on stderr when enabled."""
    return tqdm.tqdm(iterable, total=total, desc=desc, leave=False,
                     disable=not _progress['enabled'])


def check_size(count, limit, what):
    """Raise `SizeLimit` if `count` exceeds `limit`."""
    if count > limit:
        raise SizeLimit(f'{what}: {count} exceeds the limit {limit}')


def frac_to_str(x):
    """Render a rational as "a/b" (or "a" when integral)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f'{x.numerator}/{x.denominator}'


def str_to_frac(s):
    """Parse "a/b", "a" or an int into a `Fraction`.

    Raises:
        ValueError: If `s` is not a rational literal.
    """
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = str(s).strip()
    if not re.fullmatch(r'[+-]?\d+(/\d+)?', s):
        raise ValueError(f'Not a rational literal: {s!r}')
    return Fraction(s)


def dumps(obj):
    """Serialize `obj` deterministically."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False,
                      escape_forward_slashes=False)


def load_json(path):
    with open(path, 'r') as fh:
        return json.load(fh)


def _parse_config_value(raw):
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in '"\'':
        return raw[1:-1]
    low = raw.lower()
    if low in ('true', 'false'):
        return low == 'true'
    if re.fullmatch(r'[+-]?\d+', raw):
        return int(raw)
    if re.fullmatch(r'[+-]?\d+/\d+', raw):
        return Fraction(raw)
    return raw


def load_config(path):
    """Read a TOML-like `key = value` file into a dict.

    Blank lines and `#` comments are skipped. Dashes in keys become
    underscores so keys match argparse destinations.

    Args:
        path (str): Path to the configuration file.

    Returns:
        config (dict): Parsed values (int, Fraction, bool or str).
    """
    config = {}
    with open(path, 'r') as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise UsageError(f'{path}:{lineno}: expected key = value')
            key, value = line.split('=', 1)
            key = key.strip().replace('-', '_')
            if not key:
                raise UsageError(f'{path}:{lineno}: empty key')
            config[key] = _parse_config_value(value)
    return config


def get_save_dir(base_dir, name, subdir, id_max=100):
    """Get a unique save directory by appending the smallest positive integer
    `id < id_max` that is not already taken (i.e., no dir exists with that id).

    Args:
        base_dir (str): Base directory in which to make save directories.
        name (str): Name to identify this run. Need not be unique.
        subdir (str): Subdirectory for the kind of run (the CLI verb).
        id_max (int): Maximum ID number before raising an exception.

    Returns:
        save_dir (str): Path to a new directory with a unique name.
    """
    for uid in range(1, id_max):
        save_dir = os.path.join(base_dir, subdir, f'{name}-{uid:02d}')
        if not os.path.exists(save_dir):
            os.makedirs(save_dir)
            return save_dir

    raise RuntimeError('Too many save directories created with the same name. \
                       Delete old save directories or use another name.')


def get_logger(log_dir, name):
    """Get a `logging.Logger` instance that prints to the console
    and an auxiliary file.

    Args:
        log_dir (str): Directory in which to create the log file.
        name (str): Name to identify the logs.

    Returns:
        logger (logging.Logger): Logger instance for logging events.
    """
    class StreamHandlerWithTQDM(logging.Handler):
        """Let `logging` print without breaking `tqdm` progress bars.

        See Also:
            > https://stackoverflow.com/questions/38543506
        """
        def emit(self, record):
            try:
                msg = self.format(record)
                tqdm.tqdm.write(msg, file=sys.stderr)
                self.flush()
            except (KeyboardInterrupt, SystemExit):
                raise
            except Exception:
                self.handleError(record)

    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    # Repeated CLI calls in one process must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    # Log everything (i.e., DEBUG level and above) to a file
    log_path = os.path.join(log_dir, 'log.txt')
    file_handler = logging.FileHandler(log_path)
    file_handler.setLevel(logging.DEBUG)

    # Log everything except DEBUG level (i.e., INFO level and above) to console
    console_handler = StreamHandlerWithTQDM()
    console_handler.setLevel(logging.INFO)

    formatter = logging.Formatter('[%(asctime)s] %(message)s',
                                  datefmt='%m.%d.%y %H:%M:%S')
    file_handler.setFormatter(formatter)
    console_handler.setFormatter(formatter)

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)

    # Library modules log under their own names; send them to the file too
    for lib in ('exact', 'qcombinat', 'lattices', 'ehrhart',
                'hecke_zeta', 'analytics'):
        lib_logger = logging.getLogger(lib)
        lib_logger.setLevel(logging.DEBUG)
        for handler in list(lib_logger.handlers):
            lib_logger.removeHandler(handler)
        lib_logger.addHandler(file_handler)

    return logger
