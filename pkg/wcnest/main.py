import logging
import sys

import click

from wcnest import __version__, config
from wcnest.commands.answer_sets import answer_sets_cmd
from wcnest.commands.completion import completion_cmd
from wcnest.commands.equiv import check_equiv_cmd
from wcnest.commands.translate import translate_cmd
from wcnest.commands.verify import verify_cmd


def configure_logging(verbose=False):
    level = logging.INFO if verbose else config.get_log_level()
    logging.basicConfig(level=level, stream=sys.stderr, format='%(message)s', force=True)


@click.group()
@click.version_option(__version__, prog_name='wcnest')
@click.option('-v', '--verbose', is_flag=True, help='Log progress to stderr.')
def cli(verbose):
    """Weight-constraint programs, nested expressions and the translations between them."""
    configure_logging(verbose)


# Register commands
cli.add_command(answer_sets_cmd)
cli.add_command(translate_cmd)
cli.add_command(check_equiv_cmd)
cli.add_command(completion_cmd)
cli.add_command(verify_cmd)


if __name__ == '__main__':
    cli()
