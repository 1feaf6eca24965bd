import shutil
from typing import TYPE_CHECKING

import pandas as pd
from tabulate import tabulate

if TYPE_CHECKING:
    from isogeny2.pipeline import CandidateOutcome, RunOutput

CANDIDATE_COLUMNS = ["tag", "status", "field", "base point", "precision", "degrees s/p/q/r", "ms", "reason"]
TRUNCATION_MARKER = "..."


def console_width(max_total_width: int | None = None) -> int:
    """Return console width."""
    if max_total_width is not None:
        return max_total_width
    return shutil.get_terminal_size().columns


def _truncate(text: str, width: int) -> str:
    return text if len(text) <= width else text[: max(width - len(TRUNCATION_MARKER), 0)] + TRUNCATION_MARKER


def candidate_row(outcome: "CandidateOutcome") -> list[str]:
    degrees = ""
    if outcome.representation is not None:
        degrees = "/".join(str(d) for d in outcome.representation.degrees().values())
    return [
        outcome.tag,
        outcome.status,
        str(outcome.field),
        "" if outcome.base_point is None else str(outcome.base_point),
        "" if outcome.precision is None else str(outcome.precision),
        degrees,
        f"{sum(outcome.timings_ms.values()):.1f}",
        outcome.reason,
    ]


def candidates_frame(output: "RunOutput") -> pd.DataFrame:
    """One row per tangent candidate."""
    return pd.DataFrame([candidate_row(c) for c in output.candidates], columns=CANDIDATE_COLUMNS)


def tostring(output: "RunOutput", max_col_width: int | None = None, max_total_width: int | None = None) -> str:
    """Return the table of candidates, with a header line naming the curves.

    Long cells are cut so that the table fits the console.
    """
    frame = candidates_frame(output)
    width = console_width(max_total_width)
    if max_col_width is None:
        max_col_width = max(width // len(CANDIDATE_COLUMNS), len(TRUNCATION_MARKER) + 1)
    frame = frame.map(lambda cell: _truncate(str(cell), max_col_width))  # type: ignore[operator]

    header = f"C: {output.curve}\nC': {output.curve_p}"
    if frame.empty:
        return f"{header}\nno tangent candidates"
    table = tabulate(frame.to_numpy().tolist(), headers=CANDIDATE_COLUMNS, tablefmt="simple", disable_numparse=True)
    accepted = len(output.accepted)
    return f"{header}\n{table}\n{accepted} of {len(output.candidates)} candidates accepted."
