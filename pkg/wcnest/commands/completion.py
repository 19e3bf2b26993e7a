import logging

import click

from wcnest.commands import (
    EXIT_NEGATIVE, EXIT_NOT_TIGHT, EXIT_OK, NESTED, RunConfig, cap_option, emit, fail, format_option,
    format_record, input_path, load_program, run_guarded, semantics_option,
)
from wcnest.completion import completion_cnf, completion_document, verify_completion
from wcnest.errors import NotTightError

logger = logging.getLogger(__name__)


def export_completion(cfg, dimacs, verify):
    path = cfg.paths[0]
    semantics, program = load_program(cfg, path)
    try:
        if semantics == NESTED:
            logger.info("🚀 completing the nested program %s", path)
            _, document = completion_cnf(program)
        else:
            logger.info("🚀 completing the %s translation of %s", cfg.mode, path)
            _, _, document = completion_document(program, cfg.mode)
    except NotTightError as e:
        return fail(e, EXIT_NOT_TIGHT)
    if dimacs:
        document.write(dimacs)
        logger.info("✅ wrote %d clauses over %d variables to %s", len(document.clauses), document.num_vars, dimacs)
    elif not verify:
        emit(document.text.rstrip('\n'))
    if not verify:
        return EXIT_OK
    report = verify_completion(program, cfg.mode, cfg.cap)
    if cfg.records:
        emit(format_record(report.to_dict()))
    else:
        status = 'pass' if report.passed else 'fail'
        emit(f"completion check: {status} ({len(report.models)} models, {len(report.answer_sets)} answer sets)")
    if report.passed:
        logger.info("✅ completion models match the answer sets")
        return EXIT_OK
    logger.info("❌ completion models differ from the answer sets")
    return EXIT_NEGATIVE


@click.command('completion')
@click.argument('path', type=input_path)
@semantics_option
@click.option('--mode', type=click.Choice(['nn', 'nd']), default='nn', show_default=True,
              help='Translation whose completion is exported (weight programs only).')
@click.option('--dimacs', type=click.Path(dir_okay=False, writable=True), default=None,
              help='Write the CNF here instead of printing it.')
@click.option('--verify', is_flag=True,
              help='Compare the completion models with the answer sets instead of printing the CNF.')
@cap_option
@format_option
@click.pass_context
def completion_cmd(ctx, path, semantics, mode, dimacs, verify, cap, output_format):
    """Export the completion of a program as DIMACS CNF.

    A weight program is translated first; a nested program must already have
    literal or bot heads. Programs that are not tight are refused with exit
    code 3.
    """
    run_guarded(ctx, lambda: export_completion(
        RunConfig(paths=(path,), semantics=semantics, mode=mode, cap=cap, output_format=output_format),
        dimacs, verify,
    ))
