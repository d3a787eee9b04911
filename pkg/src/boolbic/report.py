"""Rendering mined patterns: delimited output, JSON, text tables, figures.

All data paths are deterministic: identical input and configuration yield
byte-identical files.  MSR values print with 5 decimals and harmonic
diameters with 2, matching the usual summary-table presentation; JSON keeps
full precision.  The figure path renders matplotlib PNGs next to the
delimited files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .matrixio import (
    DEFAULT_ROUND_DECIMALS,
    Matrix,
    diff_histogram,
    pair_count,
    round_half_up,
)
from .patterns import PatternRecord

MSR_FMT = "{:.5f}"
D_FMT = "{:.2f}"

PATTERN_FIELDS = (
    "rows",
    "cols",
    "n_rows",
    "n_cols",
    "bound",
    "max_inrow_diff",
    "msr",
    "harmonic_diameter",
    "area",
    "range_coverage",
)


def record_row(rec: PatternRecord, m: Matrix) -> dict:
    """Flatten one record for delimited output; labels keep matrix order."""
    b = rec.bicluster
    coverage = ";".join(
        f"{lab}={frac:.4f}" for lab, frac in rec.score.range_coverage
    )
    return {
        "rows": ";".join(b.ordered_rows(m)),
        "cols": ";".join(b.ordered_cols(m)),
        "n_rows": len(b.rows),
        "n_cols": len(b.cols),
        "bound": f"{rec.bound:g}",
        "max_inrow_diff": f"{rec.measured_diff:g}",
        "msr": MSR_FMT.format(rec.msr),
        "harmonic_diameter": D_FMT.format(rec.harmonic_diameter),
        "area": rec.area,
        "range_coverage": coverage,
    }


def record_dict(rec: PatternRecord, m: Matrix) -> dict:
    """Full-precision JSON form of one record."""
    b = rec.bicluster
    return {
        "rows": list(b.ordered_rows(m)),
        "cols": list(b.ordered_cols(m)),
        "bound": rec.bound,
        "max_inrow_diff": rec.measured_diff,
        "msr": rec.msr,
        "harmonic_diameter": rec.harmonic_diameter,
        "area": rec.area,
        "range_coverage": [
            {"col": lab, "fraction": frac} for lab, frac in rec.score.range_coverage
        ],
        "implicant": rec.source_implicant.label(),
    }


def summarize(records) -> dict:
    """Count plus worst MSR and largest harmonic diameter (summary-table shape)."""
    return {
        "patterns": len(records),
        "max_msr": max((r.msr for r in records), default=0.0),
        "max_d": max((r.harmonic_diameter for r in records), default=0.0),
    }


def summary_line(summary: dict, delta: float | None = None) -> str:
    head = "" if delta is None else f"delta={delta:g} "
    return (
        f"{head}patterns={summary['patterns']} "
        f"max_msr={MSR_FMT.format(summary['max_msr'])} "
        f"max_d={D_FMT.format(summary['max_d'])}"
    )


def records_to_csv(records, m: Matrix) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=PATTERN_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(record_row(rec, m))
    return buf.getvalue()


def records_to_json(records, m: Matrix, summary: dict | None = None) -> str:
    doc = {
        "patterns": [record_dict(r, m) for r in records],
        "summary": summary if summary is not None else summarize(records),
    }
    return json.dumps(doc, indent=2) + "\n"


def records_to_table(records, m: Matrix) -> str:
    rows = [record_row(r, m) for r in records]
    headers = list(PATTERN_FIELDS)
    cells = [[str(r[h]) for h in headers] for r in rows]
    widths = [
        max(len(h), *(len(row[k]) for row in cells)) if cells else len(h)
        for k, h in enumerate(headers)
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def stats_summary(m: Matrix, round_decimals: int = DEFAULT_ROUND_DECIMALS) -> dict:
    """Difference statistics over all in-row pairs, zeros included."""
    n, cols = m.shape
    if cols < 2:
        return {
            "pairs": 0,
            "unique_diffs": 0,
            "nonzero_unique_diffs": 0,
            "min": 0.0,
            "mean": 0.0,
            "max": 0.0,
        }
    ia, ib = np.triu_indices(cols, k=1)
    diffs = np.abs(m.values[:, ia] - m.values[:, ib]).ravel()
    rounded = {round_half_up(float(d), round_decimals) for d in diffs}
    return {
        "pairs": int(diffs.size),
        "unique_diffs": len(rounded),
        "nonzero_unique_diffs": len(rounded - {0.0}),
        "min": float(diffs.min()),
        "mean": float(diffs.mean()),
        "max": float(diffs.max()),
    }


def histogram_rows(m: Matrix, bin_width: float) -> list[dict]:
    total = pair_count(m)
    out = []
    running = 0
    for lower, count in diff_histogram(m, bin_width):
        running += count
        out.append(
            {
                "bin_lower": f"{lower:g}",
                "count": count,
                "cumulative_fraction": f"{running / total:.4f}" if total else "0.0000",
            }
        )
    return out


def stats_to_csv(m: Matrix, bin_width: float, round_decimals: int) -> str:
    buf = io.StringIO()
    summary = stats_summary(m, round_decimals)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in summary.items():
        writer.writerow([key, f"{value:g}" if isinstance(value, float) else value])
    writer.writerow([])
    writer.writerow(["bin_lower", "count", "cumulative_fraction"])
    for row in histogram_rows(m, bin_width):
        writer.writerow([row["bin_lower"], row["count"], row["cumulative_fraction"]])
    return buf.getvalue()


def stats_to_json(m: Matrix, bin_width: float, round_decimals: int) -> str:
    doc = {
        "summary": stats_summary(m, round_decimals),
        "histogram": [
            {
                "bin_lower": float(r["bin_lower"]),
                "count": r["count"],
                "cumulative_fraction": float(r["cumulative_fraction"]),
            }
            for r in histogram_rows(m, bin_width)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def stats_to_table(m: Matrix, bin_width: float, round_decimals: int) -> str:
    summary = stats_summary(m, round_decimals)
    lines = [
        f"{key}: {value:g}" if isinstance(value, float) else f"{key}: {value}"
        for key, value in summary.items()
    ]
    lines.append("")
    lines.append("bin_lower  count  cumulative_fraction")
    for row in histogram_rows(m, bin_width):
        lines.append(
            f"{row['bin_lower']:>9}  {row['count']:>5}  {row['cumulative_fraction']:>19}"
        )
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# report bundle: delimited files plus figures in one output directory


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


_SAVE_KW = dict(dpi=150, bbox_inches="tight", metadata={"Software": "boolbic"})


def _fig_histogram(m: Matrix, bin_width: float, path: Path):
    plt = _plt()
    hist = diff_histogram(m, bin_width)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(
        [lo for lo, _ in hist],
        [c for _, c in hist],
        width=bin_width,
        align="edge",
        color="#4878b0",
        edgecolor="white",
    )
    ax.set_xlabel("absolute in-row difference")
    ax.set_ylabel("pair count")
    ax.set_title("Distribution of in-row absolute differences")
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def _fig_rankings(records, d_path: Path, msr_path: Path, scatter_path: Path):
    plt = _plt()
    ranks = list(range(1, len(records) + 1))
    ds = [r.harmonic_diameter for r in records]
    msrs = [r.msr for r in records]

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ranks, ds, marker="o", ms=3, lw=1, color="#4878b0")
    ax.set_xlabel("rank (by harmonic diameter)")
    ax.set_ylabel("harmonic diameter")
    ax.set_title("Harmonic diameter by rank")
    fig.savefig(d_path, **_SAVE_KW)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ranks, msrs, marker="o", ms=3, lw=1, color="#b04848")
    ax.set_xlabel("rank (by harmonic diameter)")
    ax.set_ylabel("mean squared residue")
    ax.set_title("MSR by rank")
    fig.savefig(msr_path, **_SAVE_KW)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    ax.scatter(ds, msrs, s=14, color="#488060", alpha=0.8)
    ax.set_xlabel("harmonic diameter")
    ax.set_ylabel("mean squared residue")
    ax.set_title("MSR versus harmonic diameter")
    fig.savefig(scatter_path, **_SAVE_KW)
    plt.close(fig)


def _fig_pattern(rec: PatternRecord, m: Matrix, rank: int, path: Path):
    """Line plot of one pattern: one line per column across the pattern rows,
    with the per-row min/max band dotted."""
    plt = _plt()
    rows = rec.bicluster.ordered_rows(m)
    cols = rec.bicluster.ordered_cols(m)
    if not rows or not cols:
        return
    ri = [m.row_index(lab) for lab in rows]
    x = list(range(len(rows)))
    fig, ax = plt.subplots(figsize=(7, 4))
    for lab in cols:
        j = m.col_index(lab)
        ax.plot(x, [m.values[i, j] for i in ri], lw=1.2, label=lab)
    lows = [min(m.values[i, m.col_index(c)] for c in cols) for i in ri]
    highs = [max(m.values[i, m.col_index(c)] for c in cols) for i in ri]
    ax.plot(x, lows, ls=":", lw=2.2, color="black")
    ax.plot(x, highs, ls=":", lw=2.2, color="black")
    ax.set_xticks(x, rows, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("value")
    ax.set_title(
        f"Pattern {rank}: {len(cols)}x{len(rows)} "
        f"(max in-row diff {rec.measured_diff:g}, MSR {MSR_FMT.format(rec.msr)})"
    )
    if len(cols) <= 12:
        ax.legend(fontsize=7, ncols=2)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def write_report(
    m: Matrix,
    records,
    out_dir,
    delta: float | None = None,
    bin_width: float = 0.1,
    top_k: int = 4,
    figures: bool = True,
    round_decimals: int = DEFAULT_ROUND_DECIMALS,
) -> list[Path]:
    """Write the full report bundle into ``out_dir`` and list the files.

    Delimited outputs: patterns.csv / patterns.json (every record),
    top_patterns.csv (top-k by harmonic diameter), histogram.csv and
    summary.txt.  With ``figures`` on, PNGs of the histogram, the two
    ranking curves, the MSR-diameter scatter and the top-k pattern line
    plots land alongside.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(name: str, text: str):
        path = out / name
        path.write_text(text, encoding="utf-8")
        written.append(path)

    summary = summarize(records)
    emit("patterns.csv", records_to_csv(records, m))
    emit("patterns.json", records_to_json(records, m, summary))

    top = records[:top_k]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "n_rows", "n_cols", "area", "msr", "harmonic_diameter"])
    for k, rec in enumerate(top, start=1):
        writer.writerow(
            [
                k,
                len(rec.bicluster.rows),
                len(rec.bicluster.cols),
                rec.area,
                MSR_FMT.format(rec.msr),
                D_FMT.format(rec.harmonic_diameter),
            ]
        )
    emit("top_patterns.csv", buf.getvalue())
    emit("histogram.csv", stats_to_csv(m, bin_width, round_decimals))
    emit("summary.txt", summary_line(summary, delta) + "\n")

    if figures:
        _fig_histogram(m, bin_width, out / "histogram.png")
        written.append(out / "histogram.png")
        if records:
            _fig_rankings(
                records,
                out / "diameter_ranking.png",
                out / "msr_ranking.png",
                out / "msr_vs_diameter.png",
            )
            written += [
                out / "diameter_ranking.png",
                out / "msr_ranking.png",
                out / "msr_vs_diameter.png",
            ]
        for k, rec in enumerate(top, start=1):
            if rec.bicluster.rows and rec.bicluster.cols:
                path = out / f"pattern_{k:02d}.png"
                _fig_pattern(rec, m, k, path)
                written.append(path)
    return written
