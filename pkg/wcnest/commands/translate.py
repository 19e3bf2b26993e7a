import logging

import click

from wcnest.commands import (
    EXIT_OK, RunConfig, emit, format_option, format_record, input_path, load_program, require_weight, run_guarded,
    semantics_option,
)
from wcnest.parser import print_nested_program
from wcnest.translate import TRANSLATIONS, translate

logger = logging.getLogger(__name__)


def report_lines(report, records=False):
    """The translation report as comment lines, so the output still parses as a nested program."""
    fields = report.to_dict()
    if records:
        return [f"% {format_record(fields)}"]
    return [f"% {key}: {value}" for key, value in fields.items()]


def run_translation(cfg):
    path = cfg.paths[0]
    semantics, program = load_program(cfg, path)
    require_weight(semantics, path)
    logger.info("🚀 translating %s (mode %s%s)", path, cfg.mode, ', simplified' if cfg.simplify else '')
    report = translate(program, cfg.mode, cfg.simplify)
    text = print_nested_program(report.output)
    if text:
        emit(text)
    if cfg.report:
        for line in report_lines(report, cfg.records):
            emit(line)
    logger.info("✅ %d rules", report.rule_count)
    return EXIT_OK


@click.command('translate')
@click.argument('path', type=input_path)
@semantics_option
@click.option('--mode', type=click.Choice(list(TRANSLATIONS)), default='basic', show_default=True,
              help='basic, nondisjunctive (nd) or nonnested (nn) translation.')
@click.option('--simplify', is_flag=True, help='Minimize threshold formulas (basic and nd only).')
@click.option('--report', is_flag=True, help='Append the auxiliary atoms and size metrics as comments.')
@format_option
@click.pass_context
def translate_cmd(ctx, path, semantics, mode, simplify, report, output_format):
    """Translate a weight-constraint program into a program with nested expressions."""
    run_guarded(ctx, lambda: run_translation(RunConfig(
        paths=(path,), semantics=semantics, mode=mode, simplify=simplify, report=report,
        output_format=output_format,
    )))
