"""End-to-end checks of the packaged exercise corpus: every golden sample
proof fully verifies within budget, and each flawed companion text is
flagged at exactly its seeded line."""
from __future__ import annotations

import time
from importlib import resources

import pytest

from proofcheck.service import check_text

GOLDEN_IDS = (
    "geo-perp-transfer",
    "nt-product-successor-even",
    "nt-four-divides-even-square",
    "geo-square-diagonal-equidistant",
    "geo-perp-bisector-iff",
)

# flawed text file -> (paired exercise id, expected flagged line,
#                      fallacy expected in the diagnosis)
FLAWED = {
    "flawed-nt-product-successor-even-step.txt":
        ("nt-product-successor-even", 8, "fal.sum-parity-split"),
    "flawed-nt-product-successor-even-fallacy.txt":
        ("nt-product-successor-even", 5, "fal.sum-parity-split"),
    "flawed-nt-four-divides-chain.txt":
        ("nt-four-divides-even-square", 4, "fal.binomial-square"),
}


def flawed_text(name: str) -> str:
    return (resources.files("proofcheck") / "corpus" / name).read_text()


def test_corpus_contains_the_expected_exercises(corpus):
    assert set(GOLDEN_IDS) <= set(corpus)


@pytest.mark.parametrize("exercise_id", GOLDEN_IDS)
def test_golden_proof_verifies_within_budget(corpus, exercise_id):
    ex = corpus[exercise_id]
    assert ex.sample_proof
    start = time.monotonic()
    report = check_text(ex, ex.sample_proof)
    elapsed = time.monotonic() - start
    assert report.language_ok
    assert report.all_verified, [
        (l.line_id, l.verdict, l.messages) for l in report.lines
        if l.verdict not in ("verified", "skipped")]
    assert report.goal_status == ("reached" if ex.goal_check else "bypassed")
    assert elapsed < 2.0, f"{exercise_id} took {elapsed:.2f}s"


@pytest.mark.parametrize("name", sorted(FLAWED))
def test_flawed_text_is_flagged_at_the_seeded_line(corpus, name):
    exercise_id, line, fallacy = FLAWED[name]
    report = check_text(corpus[exercise_id], flawed_text(name))
    flagged = [l for l in report.lines
               if l.verdict in ("not-verified", "fallacy", "type-error")]
    assert [l.line_id for l in flagged] == [line]
    assert fallacy in flagged[0].fallacies
    assert not report.all_verified


@pytest.mark.parametrize("exercise_id", GOLDEN_IDS)
def test_corpus_exercises_are_well_formed(corpus, exercise_id):
    ex = corpus[exercise_id]
    assert ex.nat
    assert ex.form is not None
    assert ex.field in ("number-theory", "geometry", "induction")
