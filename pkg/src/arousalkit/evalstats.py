"""Priority-pair effect sizes and significance tables over score rows.

Scores are grouped by (field, mode, priority); for each of the five
priority pairs the group means are compared with Cohen's d and a two
sample t test (Welch by default, pooled selectable). Output is rendered
both as machine-readable per-statistic files and as a display table with
significance annotations (*** p<0.001, ** p<0.01, * p<0.05).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Iterable, Optional

from .corpus import Field, Priority
from .scoring import MODES, ScoredRow
from .stats import cohens_d, pooled_t_test, welch_t_test

logger = logging.getLogger(__name__)

#: (higher priority, lower priority) comparisons, in table column order.
PRIORITY_PAIRS = (
    (Priority.BLOCKER, Priority.TRIVIAL),
    (Priority.BLOCKER, Priority.CRITICAL),
    (Priority.CRITICAL, Priority.MAJOR),
    (Priority.MAJOR, Priority.MINOR),
    (Priority.MINOR, Priority.TRIVIAL),
)

DISPLAY_FIELD_LABELS = {
    Field.TITLE: "Title",
    Field.DESCRIPTION: "Desc",
    Field.ALL_COMMENTS: "All comments",
    Field.FIRST_COMMENT: "First comment",
    Field.LAST_COMMENT: "Last comment",
}


def pair_label(pair: tuple[Priority, Priority]) -> str:
    return f"{pair[0].value}-{pair[1].value}"


@dataclass
class ComparisonCell:
    field: Field
    mode: str
    pair: tuple[Priority, Priority]
    cohen_d: float
    t: float
    df: float
    p: float
    n_high: int
    n_low: int


@dataclass
class EvalTable:
    fields: tuple[Field, ...]
    modes: tuple[str, ...]
    pairs: tuple[tuple[Priority, Priority], ...]
    cells: dict[tuple[Field, str, tuple[Priority, Priority]], Optional[ComparisonCell]]
    warnings: list[str] = dataclass_field(default_factory=list)

    def cell(self, field: Field, mode: str, pair) -> Optional[ComparisonCell]:
        return self.cells.get((field, mode, pair))


def evaluate_priorities(
    rows: Iterable[ScoredRow], t_test: str = "welch"
) -> EvalTable:
    """Build the full field x mode x priority-pair comparison grid.

    Unknown-priority rows are dropped. A pair whose groups are too small
    (or degenerate) yields an empty cell and a warning, never an error.
    """
    if t_test == "welch":
        t_test_fn = welch_t_test
    elif t_test == "pooled":
        t_test_fn = pooled_t_test
    else:
        raise ValueError(f"unknown t-test variant: {t_test!r}")
    groups: dict[tuple[Field, str, Priority], list[float]] = {}
    modes_seen: set[str] = set()
    n_rows = 0
    for row in rows:
        n_rows += 1
        if row.priority is Priority.UNKNOWN:
            continue
        modes_seen.add(row.mode)
        groups.setdefault((row.field, row.mode, row.priority), []).append(row.score)
    if n_rows == 0:
        raise ValueError("empty score table")
    modes = tuple(m for m in MODES if m in modes_seen)
    fields = tuple(Field)
    table = EvalTable(fields, modes, PRIORITY_PAIRS, {})
    for field in fields:
        for mode in modes:
            for pair in PRIORITY_PAIRS:
                high = groups.get((field, mode, pair[0]), [])
                low = groups.get((field, mode, pair[1]), [])
                key = (field, mode, pair)
                if len(high) < 2 or len(low) < 2:
                    table.cells[key] = None
                    msg = (
                        f"{field.value}/{mode}/{pair_label(pair)}: group too small "
                        f"({len(high)} vs {len(low)}), cell left empty"
                    )
                    table.warnings.append(msg)
                    logger.warning(msg)
                    continue
                try:
                    d = cohens_d(high, low)
                    t, df, p = t_test_fn(high, low)
                except ValueError as exc:
                    table.cells[key] = None
                    msg = f"{field.value}/{mode}/{pair_label(pair)}: {exc}; cell left empty"
                    table.warnings.append(msg)
                    logger.warning(msg)
                    continue
                table.cells[key] = ComparisonCell(
                    field, mode, pair, d, t, df, p, len(high), len(low)
                )
    return table


def significance_marker(p: float) -> str:
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def _stat_lines(table: EvalTable, stat: str, fmt: str) -> list[str]:
    lines = ["field,mode," + ",".join(pair_label(p) for p in table.pairs)]
    for field in table.fields:
        for mode in table.modes:
            cells = []
            for pair in table.pairs:
                cell = table.cell(field, mode, pair)
                cells.append(format(getattr(cell, stat), fmt) if cell else "")
            lines.append(f"{field.value},{mode}," + ",".join(cells))
    return lines


def render_tables(table: EvalTable, out_dir: str | Path) -> list[Path]:
    """Write per-statistic delimited files and the annotated display table.

    Returns the written paths, deterministically ordered.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for stat, fmt, name in (
        ("cohen_d", ".4f", "eval_d.csv"),
        ("t", ".4f", "eval_t.csv"),
        ("df", ".6g", "eval_df.csv"),
        ("p", ".4g", "eval_p.csv"),
    ):
        path = out_dir / name
        path.write_text("\n".join(_stat_lines(table, stat, fmt)) + "\n", encoding="utf-8")
        written.append(path)
    display = out_dir / "eval_tables.txt"
    display.write_text(_render_display(table), encoding="utf-8")
    written.append(display)
    return written


def _render_display(table: EvalTable) -> str:
    col_width = 18
    label_width = 16
    header = (
        "".ljust(label_width)
        + "".join(pair_label(p).rjust(col_width) for p in table.pairs)
    )
    out = ["Cohen's d between issue priorities", header]
    for field in table.fields:
        for i, mode in enumerate(table.modes):
            label = (DISPLAY_FIELD_LABELS[field] if i == 0 else "") + f" [{mode}]"
            cells = []
            for pair in table.pairs:
                cell = table.cell(field, mode, pair)
                cells.append(f"{cell.cohen_d:.4f}" if cell else "-")
            out.append(label.ljust(label_width) + "".join(c.rjust(col_width) for c in cells))
    out.append("")
    out.append("t-test p-values (*** p<0.001, ** p<0.01, * p<0.05)")
    out.append(header)
    for field in table.fields:
        for i, mode in enumerate(table.modes):
            label = (DISPLAY_FIELD_LABELS[field] if i == 0 else "") + f" [{mode}]"
            cells = []
            for pair in table.pairs:
                cell = table.cell(field, mode, pair)
                if cell is None:
                    cells.append("-")
                else:
                    cells.append(f"{cell.p:.3g}{significance_marker(cell.p)}")
            out.append(label.ljust(label_width) + "".join(c.rjust(col_width) for c in cells))
    out.append("")
    return "\n".join(out) + "\n"
