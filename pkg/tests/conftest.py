import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from regender.patterns import default_patterns  # noqa: E402
from regender.tagset import TaggedSentence  # noqa: E402


def sent(text: str) -> TaggedSentence:
    """Build a sentence from ``word/TAG word/TAG ...``."""
    pairs = [tok.rsplit("/", 1) for tok in text.split()]
    return TaggedSentence.from_pairs(pairs)


@pytest.fixture(scope="session")
def patterns():
    return default_patterns()


# (criterion number, passed, detail) rows filled in by test_acceptance
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE, key=lambda row: str(row[0])):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
