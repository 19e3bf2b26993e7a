import contextlib
import os

from wcnest.errors import PreconditionError

# Defaults; the caps and the log level are re-read from the environment on every call.
DEFAULTS = {
    'enumeration_cap': 16,
    'ht_cap': 14,
    'max_basic_length': 20,
    'seed': 0,
    'cases': 200,
    'log_level': 'WARNING',
}

CAP_VARIABLES = ('WCNEST_CAP', 'WCNEST_HT_CAP')


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"{name} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise PreconditionError(f"{name} must be a positive integer, got {raw!r}")
    return value


def get_cap():
    """Enumeration cap for the brute-force answer-set oracles."""
    return _env_int('WCNEST_CAP', DEFAULTS['enumeration_cap'])


def get_ht_cap():
    return _env_int('WCNEST_HT_CAP', DEFAULTS['ht_cap'])


def get_log_level():
    return os.environ.get('WCNEST_LOG_LEVEL', DEFAULTS['log_level']).upper()


@contextlib.contextmanager
def caps_overridden(cap):
    """Set both enumeration caps for the duration of a block; None leaves them alone."""
    if cap is None:
        yield
        return
    saved = {name: os.environ.get(name) for name in CAP_VARIABLES}
    os.environ.update({name: str(cap) for name in CAP_VARIABLES})
    try:
        yield
    finally:
        for name, value in saved.items():
            if value is None:
                os.environ.pop(name, None)
            else:
                os.environ[name] = value
