"""Shared fixtures and pipeline helpers for the test suite."""
from __future__ import annotations

import pytest

# One "ACCEPTANCE <criterion>: PASS|FAIL" entry per acceptance test,
# echoed after the run so the summary survives output capturing.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)

from proofcheck.annotate import annotate_text
from proofcheck.service import load_corpus
from proofcheck.surface import preprocess

# The two reference texts used throughout the structural tests: a proof by
# parity case distinction (9 lines after annotation) and a one-step
# geometry argument (5 lines after synthetic markers are inserted).
CASES_TEXT = (
    "Proof:\nLet n be a natural number.\n\n"
    "Suppose that n is even.\nThen n*(n+1) is even.\n\n"
    "Suppose that n is odd.\nThen n+1 is even.\nHence n*(n+1) is even.\n\n"
    "Hence n*(n+1) is even.\nqed\n")

TRANSFER_TEXT = ("Let g, h, l be lines.\n"
                 "Suppose that g || l & l _|_ h.\n"
                 "Then g _|_ h.\n")


def pipeline(text, symbols=(), field="number-theory"):
    """Preprocess and annotate a proof text."""
    return annotate_text(preprocess(text, set(symbols), field), field)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def cases_lines():
    return pipeline(CASES_TEXT, {"n"})


@pytest.fixture(scope="session")
def transfer_lines():
    return pipeline(TRANSFER_TEXT, {"g", "h", "l"}, "geometry")
