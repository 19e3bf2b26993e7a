import pytest
from click.testing import CliRunner

from tests.programs import (
    CHOICE_AT_MOST_ONE, DENY_Q_WITH_P, DOUBLE_NEGATION, EXACTLY_ONE_WITH_P, EXCLUDED_MIDDLE, SIMPLIFIED_CHOICE,
    WEIGHTED_RULE, golden_text,
)
from wcnest import __version__
from wcnest.main import cli


@pytest.fixture
def run():
    runner = CliRunner(mix_stderr=False)

    def invoke(*args):
        return runner.invoke(cli, list(args))
    return invoke


def test_version(run):
    result = run('--version')
    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_answer_sets_of_a_weight_program(run, write_program):
    result = run('answer-sets', write_program('choice.wc', CHOICE_AT_MOST_ONE))
    assert result.exit_code == 0
    assert result.stdout == "{}\n{a}\n{b}\n"


def test_answer_sets_of_a_nested_program(run, write_program):
    result = run('answer-sets', write_program('middle.lp', EXCLUDED_MIDDLE))
    assert result.exit_code == 0
    assert result.stdout == "{}\n{a}\n"


def test_semantics_option_overrides_the_extension(run, write_program):
    result = run('answer-sets', '--semantics', 'nested', write_program('middle.txt', DOUBLE_NEGATION))
    assert result.stdout == "{}\n{a}\n"


def test_answer_sets_as_records(run, write_program):
    result = run('answer-sets', '--format', 'records', write_program('rule.wc', WEIGHTED_RULE))
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["index=1 size=0 literals=''", "index=2 size=1 literals=a"]


def test_no_answer_sets_exits_one(run, write_program):
    result = run('answer-sets', write_program('empty.wc', ":- ."))
    assert result.exit_code == 1
    assert result.stdout == ''


def test_parse_errors_exit_two(run, write_program):
    result = run('answer-sets', write_program('bad.wc', "1 <= {p=1} :- 0 <= {p=2, p=-1}."))
    assert result.exit_code == 2
    assert result.stderr.startswith('❌')
    assert 'line 1' in result.stderr
    assert result.stdout == ''


def test_cap_exceeded_exits_two(run, write_program):
    result = run('answer-sets', '--cap', '1', write_program('choice.wc', CHOICE_AT_MOST_ONE))
    assert result.exit_code == 2
    assert 'enumeration cap' in result.stderr


def test_simplified_translation(run, write_program):
    result = run('translate', '--simplify', write_program('choice.wc', CHOICE_AT_MOST_ONE))
    assert result.exit_code == 0
    assert result.stdout == SIMPLIFIED_CHOICE + "\n"


def test_translation_report(run, write_program):
    result = run('translate', '--mode', 'nn', '--report', write_program('choice.wc', CHOICE_AT_MOST_ONE))
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert len([line for line in lines if not line.startswith('%')]) == 12
    assert '% rules: 12' in lines
    assert '% weight_atoms: 6' in lines


def test_translation_report_as_a_record(run, write_program):
    path = write_program('choice.wc', CHOICE_AT_MOST_ONE)
    result = run('translate', '--mode', 'nn', '--report', '--format', 'records', path)
    assert result.stdout.splitlines()[-1].startswith('% mode=nn ')


def test_translating_a_nested_program_is_an_error(run, write_program):
    result = run('translate', write_program('middle.lp', EXCLUDED_MIDDLE))
    assert result.exit_code == 2


@pytest.mark.parametrize('method', ['ht', 'turner'])
def test_strongly_equivalent_weight_programs(run, write_program, method):
    first = write_program('one.wc', EXACTLY_ONE_WITH_P)
    second = write_program('two.wc', DENY_Q_WITH_P)
    result = run('check-equiv', '--method', method, first, second)
    assert result.exit_code == 0
    assert result.stdout == "equivalent\n"


def test_weak_but_not_strong(run, write_program):
    first = write_program('one.wc', "p :- not q.")
    second = write_program('two.wc', "p.")
    strong = run('check-equiv', first, second)
    assert strong.exit_code == 1
    assert strong.stdout.startswith("not equivalent\ncounterexample: ")
    assert run('check-equiv', '--weak', first, second).exit_code == 0


def test_weak_counterexample(run, write_program):
    first = write_program('one.wc', "p.")
    second = write_program('two.wc', "p. q.")
    result = run('check-equiv', '--weak', '--format', 'records', first, second)
    assert result.exit_code == 1
    assert result.stdout == "equivalent=no method=answer-sets counterexample='{p}'\n"


def test_nested_strong_equivalence(run, write_program):
    first = write_program('one.lp', EXCLUDED_MIDDLE)
    second = write_program('two.lp', DOUBLE_NEGATION)
    assert run('check-equiv', first, second).exit_code == 0
    assert run('check-equiv', '--method', 'turner', first, second).exit_code == 2


def test_mixed_languages_are_an_error(run, write_program):
    result = run('check-equiv', write_program('one.lp', EXCLUDED_MIDDLE), write_program('two.wc', "a."))
    assert result.exit_code == 2


def test_completion_prints_dimacs(run, write_program):
    result = run('completion', write_program('choice.wc', CHOICE_AT_MOST_ONE))
    assert result.exit_code == 0
    assert result.stdout == golden_text('choice.cnf')


def test_completion_writes_dimacs(run, write_program, tmp_path):
    target = tmp_path / 'rule.cnf'
    result = run('completion', '--dimacs', str(target), write_program('rule.wc', WEIGHTED_RULE))
    assert result.exit_code == 0
    assert result.stdout == ''
    assert target.read_text(encoding='utf-8') == golden_text('weighted_rule.cnf')


def test_completion_verification(run, write_program):
    result = run('completion', '--verify', write_program('choice.wc', CHOICE_AT_MOST_ONE))
    assert result.exit_code == 0
    assert result.stdout == "completion check: pass (3 models, 3 answer sets)\n"


def test_completion_refuses_non_tight_translations(run, write_program):
    result = run('completion', write_program('loop.wc', "p :- p."))
    assert result.exit_code == 3
    assert 'not tight' in result.stderr


def test_verify_a_theorem(run):
    result = run('verify', '--theorem', '1', '--cases', '5')
    assert result.exit_code == 0
    assert result.stdout.startswith('theorem-1: ')
    assert ' 0 failed' in result.stdout


def test_verify_as_records(run):
    result = run('verify', '--lemma', '1', '--lemma', '2', '--cases', '10', '--format', 'records')
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert [line.split()[0] for line in lines] == ['check=lemma-1', 'check=lemma-2']
    assert all('status=pass' in line for line in lines)


def test_unknown_theorem_is_a_usage_error(run):
    assert run('verify', '--theorem', '7').exit_code == 2


def test_completion_of_a_nested_program(run, write_program):
    result = run('completion', '--verify', write_program('pair.lp', "a :- not b.\nb :- not a."))
    assert result.exit_code == 0
    assert result.stdout == "completion check: pass (2 models, 2 answer sets)\n"


def test_completion_refuses_non_tight_nested_programs(run, write_program):
    result = run('completion', write_program('loop.lp', "a :- b.\nb :- a."))
    assert result.exit_code == 3
    assert 'not tight' in result.stderr


def test_completion_needs_simple_heads(run, write_program):
    assert run('completion', write_program('middle.lp', EXCLUDED_MIDDLE)).exit_code == 2


def test_verify_with_a_cap(run):
    result = run('verify', '--check', 'lemma-1', '--cases', '5', '--cap', '3')
    assert result.exit_code == 0
    assert ' 0 failed' in result.stdout


def test_verify_rejects_a_zero_cap(run):
    assert run('verify', '--check', 'lemma-1', '--cap', '0').exit_code == 2


@pytest.mark.parametrize('value', ['x', '0', '-4'])
def test_invalid_cap_in_the_environment_exits_two(run, write_program, monkeypatch, value):
    monkeypatch.setenv('WCNEST_CAP', value)
    result = run('answer-sets', write_program('choice.wc', CHOICE_AT_MOST_ONE))
    assert result.exit_code == 2
    assert '❌' in result.stderr
    assert 'WCNEST_CAP' in result.stderr
