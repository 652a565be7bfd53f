"""
Flat summaries of reports and enumeration runs as pandas DataFrames, with
CSV and XLSX writers for the export directory.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

from beilab.schema import EnumerationRun, InvariantReport, Verdict

logger = logging.getLogger(__name__)


def report_frame(reports: Sequence[InvariantReport]) -> pd.DataFrame:
    """One row per (graph, k)."""
    rows: List[Dict] = []
    for rep in reports:
        base = {
            "graph": rep.graph,
            "n": rep.n,
            "edges": rep.edges,
            "components": rep.components,
            "closed": rep.flags.closed,
            "block": rep.flags.block,
            "unmixed": rep.flags.unmixed,
            "cm": rep.flags.cm,
            "dimension": rep.dimension,
            "depth_limit": rep.depth_limit,
            "field": rep.field,
            "seed": rep.seed,
        }
        if not rep.rows:
            rows.append(base)
        for row in rep.rows:
            rows.append({**base, **row.model_dump()})
    return pd.DataFrame.from_records(rows)


def verdict_frame(verdicts: Sequence[Verdict]) -> pd.DataFrame:
    columns = ["selector", "graph", "kind", "ok", "details"]
    records = [{**v.model_dump(exclude={"details"}), "details": str(v.details)} for v in verdicts]
    return pd.DataFrame.from_records(records, columns=columns)


def run_frame(run: EnumerationRun) -> pd.DataFrame:
    """Tallies per selector: counterexamples and evidence agree/disagree counts."""
    rows = []
    for name in run.selectors:
        tally = run.evidence.get(name, {})
        rows.append(
            {
                "selector": name,
                "counterexamples": sum(1 for v in run.counterexamples if v.selector == name),
                "agree": tally.get("agree", 0),
                "disagree": tally.get("disagree", 0),
                "n_min": run.n_min,
                "n_max": run.n_max,
                "k_max": run.k_max,
                "reduce_isomorphism": run.reduce_isomorphism,
                "field": run.field,
                "seed": run.seed,
            }
        )
    return pd.DataFrame.from_records(rows)


def write_frames(frames: Dict[str, pd.DataFrame], directory: str, stem: str) -> Dict[str, str]:
    """
    Writes <stem>.csv from the first frame and <stem>.xlsx with one sheet
    per frame. Returns the paths written.
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{stem}.csv"
    xlsx_path = out / f"{stem}.xlsx"
    first = next(iter(frames.values()))
    first.to_csv(csv_path, index=False)
    with pd.ExcelWriter(xlsx_path, engine="openpyxl") as writer:
        for sheet, frame in frames.items():
            frame.to_excel(writer, sheet_name=sheet[:31], index=False)
    logger.info("[export] wrote %s and %s", csv_path, xlsx_path)
    return {"csv": str(csv_path), "xlsx": str(xlsx_path)}


def export_run(run: EnumerationRun, directory: str, stem: str = "enumeration") -> Dict[str, str]:
    return write_frames(
        {"selectors": run_frame(run), "counterexamples": verdict_frame(run.counterexamples)},
        directory,
        stem,
    )


def export_reports(reports: Sequence[InvariantReport], directory: str, stem: Optional[str] = None) -> Dict[str, str]:
    return write_frames({"reports": report_frame(reports)}, directory, stem or "analysis")
