import pytest

from tests.programs import CHOICE_AT_MOST_ONE, DOUBLE_NEGATION, EXCLUDED_MIDDLE, WEIGHTED_RULE
from wcnest.parser import parse_nested_program, parse_weight_program


@pytest.fixture
def choice_program():
    return parse_weight_program(CHOICE_AT_MOST_ONE)


@pytest.fixture
def weighted_program():
    return parse_weight_program(WEIGHTED_RULE)


@pytest.fixture
def excluded_middle():
    return parse_nested_program(EXCLUDED_MIDDLE)


@pytest.fixture
def double_negation():
    return parse_nested_program(DOUBLE_NEGATION)


@pytest.fixture
def write_program(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write
