import logging

import click

from wcnest import config
from wcnest.commands import (
    EXIT_NEGATIVE, EXIT_OK, RunConfig, cap_option, emit, format_option, format_record, run_guarded,
)
from wcnest.verify import CHECKS, LEMMAS, PROPOSITIONS, THEOREMS, run_check

logger = logging.getLogger(__name__)


def selected_checks(theorems, propositions, lemmas, checks):
    names = [f"theorem-{n}" for n in theorems]
    names += [f"proposition-{n}" for n in propositions]
    names += [f"lemma-{n}" for n in lemmas]
    names += list(checks)
    return list(dict.fromkeys(names)) or list(CHECKS)


def describe(result):
    line = f"{result.name}: {result.passed} passed, {result.failed} failed, {result.skipped} skipped"
    if 'slope' in result.extra:
        line += f" (slope {result.extra['slope']})"
    lines = [line]
    if result.first_failure is not None:
        lines.append(f"  first failure: {result.first_failure}")
    return lines


def run_verification(cfg, names):
    failed = []
    for name in names:
        logger.info("🚀 %s over %d cases (seed %d)", name, cfg.cases, cfg.seed)
        result = run_check(name, cfg.cases, cfg.seed, cfg.cap)
        if cfg.records:
            emit(format_record(result.to_dict()))
        else:
            for line in describe(result):
                emit(line)
        if not result.ok:
            logger.info("❌ %s failed %d cases", name, result.failed)
            failed.append(name)
    return EXIT_NEGATIVE if failed else EXIT_OK


def _numbers(values):
    return [str(v) for v in values]


@click.command('verify')
@click.option('--theorem', 'theorems', multiple=True, type=click.Choice(_numbers(THEOREMS)),
              help='Correspondence theorem to check (repeatable).')
@click.option('--proposition', 'propositions', multiple=True, type=click.Choice(_numbers(PROPOSITIONS)))
@click.option('--lemma', 'lemmas', multiple=True, type=click.Choice(_numbers(LEMMAS)))
@click.option('--check', 'checks', multiple=True, type=click.Choice(list(CHECKS)),
              help='Any check by name, e.g. completion.')
@click.option('--cases', type=click.IntRange(min=0), default=config.DEFAULTS['cases'], show_default=True)
@click.option('--seed', type=int, default=config.DEFAULTS['seed'], show_default=True)
@cap_option
@format_option
@click.pass_context
def verify_cmd(ctx, theorems, propositions, lemmas, checks, cases, seed, cap, output_format):
    """Run randomized cross-checks over a seeded corpus of programs.

    Without a selection every check runs. Exits 0 iff no case fails.
    """
    names = selected_checks(theorems, propositions, lemmas, checks)
    run_guarded(ctx, lambda: run_verification(
        RunConfig(seed=seed, cases=cases, cap=cap, output_format=output_format), names,
    ))
