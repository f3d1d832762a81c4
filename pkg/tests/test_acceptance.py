"""The nine acceptance criteria at their stated tolerances, one line each."""

import pytest

from longclaw.harness import acceptance as acc


@pytest.fixture(scope="module")
def log():
    return acc.TerminalLog()


LINES = []  # shown in the terminal summary by conftest


def report(result):
    LINES.append(result.line())
    print(result.line())
    assert result.passed, result.line()
    assert result.seconds <= result.limit, result.line()


def test_criterion_1_validator():
    report(acc.criterion_1())


def test_criterion_2_make_rigid():
    report(acc.criterion_2())


def test_criterion_3_gyarfas():
    report(acc.criterion_3())


def test_criterion_4_path_lemmas():
    report(acc.criterion_4())


def test_criterion_5_separators(log):
    report(acc.criterion_5(log=log))


def test_criterion_6_claws(log):
    report(acc.criterion_6(log=log))


def test_criterion_7_big_particle(log):
    report(acc.criterion_7(log=log))


def test_criterion_8_arithmetic():
    report(acc.criterion_8())


def test_criterion_9_terminal_degree(log):
    # runs last in file order, after 5-7 have filled the shared log
    report(acc.criterion_9(log))
