import sys

import pytest

from passflow.matchdata import parse_match_dict, segment
from passflow.synth import demo_match, group_match


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the one-line acceptance verdicts after capture ends."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", ()) if mod else ()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def demo_record():
    """Segmented showcase match: 5 groups, counters, away phases, frames."""
    doc, labels = demo_match(seed=11)
    return segment(parse_match_dict(doc)), labels


@pytest.fixture(scope="session")
def grouped_record():
    """Mid-size grouped match without frames, for corpus-level tests."""
    doc, labels = group_match(seed=5, n_phases=90, n_counter=5)
    return segment(parse_match_dict(doc)), labels
