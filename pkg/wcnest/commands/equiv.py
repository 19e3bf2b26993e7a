import logging

import click

from wcnest.commands import (
    EXIT_NEGATIVE, EXIT_OK, NESTED, RunConfig, cap_option, emit, format_option, format_record, input_path,
    load_program, run_guarded, semantics_option,
)
from wcnest.errors import PreconditionError
from wcnest.ht import strong_eq_nested, strong_eq_weight
from wcnest.models.core import EquivalenceVerdict, sort_interpretations
from wcnest.nsem import answer_sets_n
from wcnest.wsem import answer_sets_w, turner_strong_eq

logger = logging.getLogger(__name__)

HT = 'ht'
TURNER = 'turner'


def weak_verdict(first, second):
    """Compare answer-set lists; the counterexample is the first answer set of only one program."""
    left, right = set(first), set(second)
    difference = sort_interpretations(left ^ right)
    if difference:
        return EquivalenceVerdict(False, difference[0], 'answer-sets')
    return EquivalenceVerdict(True, None, 'answer-sets')


def compare(cfg, strong, method):
    first_path, second_path = cfg.paths
    first_semantics, first = load_program(cfg, first_path)
    second_semantics, second = load_program(cfg, second_path)
    if first_semantics != second_semantics:
        raise PreconditionError(f"{first_path} and {second_path} are programs in different languages")
    nested = first_semantics == NESTED
    logger.info("🚀 checking %s equivalence of %s and %s", 'strong' if strong else 'weak', first_path, second_path)
    if not strong:
        enumerate_sets = answer_sets_n if nested else answer_sets_w
        return weak_verdict(enumerate_sets(first, cfg.cap), enumerate_sets(second, cfg.cap))
    if nested:
        if method == TURNER:
            raise PreconditionError("the turner criterion applies to weight-constraint programs only")
        return strong_eq_nested(first, second, cfg.cap)
    if method == TURNER:
        return turner_strong_eq(first, second, cfg.cap)
    return strong_eq_weight(first, second, cfg.cap)


def show_verdict(verdict, records=False):
    if records:
        emit(format_record(verdict.to_dict()))
        return
    emit('equivalent' if verdict else 'not equivalent')
    if verdict.counterexample is not None:
        emit(f"counterexample: {verdict.to_dict()['counterexample']}")


def run_check_equiv(cfg, strong, method):
    verdict = compare(cfg, strong, method)
    show_verdict(verdict, cfg.records)
    logger.info("✅ verdict: %s", 'equivalent' if verdict else 'not equivalent')
    return EXIT_OK if verdict else EXIT_NEGATIVE


@click.command('check-equiv')
@click.argument('first', type=input_path)
@click.argument('second', type=input_path)
@click.option('--strong/--weak', default=True, show_default=True,
              help='Strong equivalence (in every context) or equality of answer sets.')
@click.option('--method', type=click.Choice([HT, TURNER]), default=HT, show_default=True,
              help='Strong-equivalence criterion for weight-constraint programs.')
@semantics_option
@cap_option
@format_option
@click.pass_context
def check_equiv_cmd(ctx, first, second, strong, method, semantics, cap, output_format):
    """Decide whether two programs are equivalent.

    Exits 0 when they are, 1 when they are not.
    """
    run_guarded(ctx, lambda: run_check_equiv(
        RunConfig(paths=(first, second), semantics=semantics, cap=cap, output_format=output_format),
        strong, method,
    ))
