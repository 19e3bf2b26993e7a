import logging

import click

from wcnest.commands import (
    EXIT_NEGATIVE, EXIT_OK, NESTED, RunConfig, cap_option, emit, format_option, format_record, input_path,
    load_program, run_guarded, semantics_option,
)
from wcnest.nsem import answer_sets_n
from wcnest.wsem import answer_sets_w

logger = logging.getLogger(__name__)


def answer_set_record(index, z):
    return {'index': index, 'size': len(z), 'literals': ','.join(str(lit) for lit in z)}


def list_answer_sets(cfg):
    path = cfg.paths[0]
    semantics, program = load_program(cfg, path)
    logger.info("🚀 computing answer sets of %s (%s semantics)", path, semantics)
    if semantics == NESTED:
        found = answer_sets_n(program, cfg.cap)
    else:
        found = answer_sets_w(program, cfg.cap)
    for index, z in enumerate(found, start=1):
        emit(format_record(answer_set_record(index, z)) if cfg.records else str(z))
    if not found:
        logger.info("no answer sets")
        return EXIT_NEGATIVE
    logger.info("✅ %d answer sets", len(found))
    return EXIT_OK


@click.command('answer-sets')
@click.argument('path', type=input_path)
@semantics_option
@cap_option
@format_option
@click.pass_context
def answer_sets_cmd(ctx, path, semantics, cap, output_format):
    """List the answer sets of a program, one per line.

    Exits 0 when there is at least one answer set and 1 when there is none.
    """
    run_guarded(ctx, lambda: list_answer_sets(
        RunConfig(paths=(path,), semantics=semantics, cap=cap, output_format=output_format)
    ))
