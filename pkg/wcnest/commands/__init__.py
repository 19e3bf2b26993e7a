"""Subcommands of the wcnest CLI and the helpers they share.

Every command builds a RunConfig from its options, runs inside a single
try block and maps domain errors to an error line on stderr plus an exit
code. Results go to stdout only.
"""
import logging
import os
import shlex
from dataclasses import dataclass

import click

from wcnest.errors import PreconditionError, WcnestError
from wcnest.parser import parse_nested_program, parse_weight_program

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
EXIT_NOT_TIGHT = 3

WEIGHT = 'weight'
NESTED = 'nested'
EXTENSIONS = {'.wc': WEIGHT, '.lp': NESTED}
PARSERS = {WEIGHT: parse_weight_program, NESTED: parse_nested_program}

TEXT = 'text'
RECORDS = 'records'


@dataclass(frozen=True)
class RunConfig:
    paths: tuple = ()
    semantics: str = None
    mode: str = 'basic'
    simplify: bool = False
    report: bool = False
    cap: int = None
    seed: int = 0
    cases: int = 200
    output_format: str = TEXT

    def __post_init__(self):
        if self.cap is not None and self.cap <= 0:
            raise PreconditionError(f"cap must be positive, got {self.cap}")
        if self.cases < 0:
            raise PreconditionError(f"cases must not be negative, got {self.cases}")

    def semantics_for(self, path):
        if self.semantics:
            return self.semantics
        return EXTENSIONS.get(os.path.splitext(path)[1].lower(), WEIGHT)

    @property
    def records(self):
        return self.output_format == RECORDS


def load_program(cfg, path):
    """Parse a program file with the semantics chosen for it; returns (semantics, program)."""
    semantics = cfg.semantics_for(path)
    with open(path, 'rb') as handle:
        data = handle.read()
    logger.debug("parsing %s as a %s program", path, semantics)
    return semantics, PARSERS[semantics](data)


def require_weight(semantics, path):
    if semantics != WEIGHT:
        raise PreconditionError(f"{path} must be a weight-constraint program")


def format_record(fields):
    """One line of key=value pairs; values are shell-quoted when needed."""
    return ' '.join(f"{key}={shlex.quote(str(value))}" for key, value in fields.items())


def emit(text=''):
    click.echo(text)


def fail(error, code=EXIT_ERROR):
    click.echo(f"❌ {error}", err=True)
    return code


def run_guarded(ctx, action):
    """Run a command body and exit with the code it returns or the code its error maps to."""
    try:
        code = action()
    except OSError as e:
        code = fail(f"cannot read input: {e}")
    except WcnestError as e:
        code = fail(e)
    ctx.exit(code)


# Shared options --------------------------------------------------------------

semantics_option = click.option(
    '--semantics', type=click.Choice([WEIGHT, NESTED]), default=None,
    help='Program language; defaults by extension (.wc weight, .lp nested).',
)
cap_option = click.option(
    '--cap', type=click.IntRange(min=1), default=None,
    help='Enumeration cap in atoms (default from WCNEST_CAP, else 16).',
)
format_option = click.option(
    '--format', 'output_format', type=click.Choice([TEXT, RECORDS]), default=TEXT, show_default=True,
    help='Plain text or one key=value record per line.',
)
input_path = click.Path(exists=True, dir_okay=False)
