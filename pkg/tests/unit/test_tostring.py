from isogeny2.core.example_data import example_data
from isogeny2.core.tostring import CANDIDATE_COLUMNS, candidates_frame, tostring
from isogeny2.pipeline import CandidateOutcome, RunOutput


def _output(candidates: list[CandidateOutcome]) -> RunOutput:
    curve = example_data.curve
    return RunOutput(example_data.run_config, curve, example_data.curve_prime, candidates, {})


def _rejected(tag: str, reason: str) -> CandidateOutcome:
    matrix = [[[1], [0]], [[0], [1]]]
    outcome = CandidateOutcome(tag, "rejected", example_data.field, matrix, reason=reason)
    outcome.timings_ms["lift"] = 1.5
    return outcome


def test_empty_output() -> None:
    text = tostring(_output([]))
    assert text.startswith("C: v^2 = 13425*u^6")
    assert text.endswith("no tangent candidates")


def test_frame() -> None:
    frame = candidates_frame(_output([_rejected("a", "no base point"), _rejected("b", "")]))
    assert list(frame.columns) == CANDIDATE_COLUMNS
    assert frame["tag"].tolist() == ["a", "b"]
    assert frame["ms"].tolist() == ["1.5", "1.5"]
    assert frame["field"].tolist() == ["F_56311", "F_56311"]


def test_long_cells_are_cut() -> None:
    text = tostring(_output([_rejected("a", "x" * 200)]), max_col_width=12)
    assert "x" * 9 + "..." in text
    assert "x" * 13 not in text
    assert text.endswith("0 of 1 candidates accepted.")


def test_width_from_total() -> None:
    narrow = tostring(_output([_rejected("a", "y" * 100)]), max_total_width=80)
    assert "y" * 11 not in narrow
