"""Write evaluation reports: delimited result files and a CDF figure."""

from __future__ import annotations

import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # file rendering only, never a display

import matplotlib.pyplot as plt

from schemavec.evaluation import DistributionSummary, EvalRecord
from schemavec.fileio import atomic_write


def write_results_file(path, records: list[EvalRecord]):
    """One line per record: original, predicted, P, R, F1 (6 decimal places)."""
    with atomic_write(path) as handle:
        for r in records:
            handle.write(
                f"{r.original}\t{r.predicted}\t{r.score.precision:.6f}"
                f"\t{r.score.recall:.6f}\t{r.score.f1:.6f}\n"
            )


def write_cdf_file(path, summary: DistributionSummary):
    with atomic_write(path) as handle:
        for x, fraction in summary.cdf:
            handle.write(f"{x:.2f}\t{fraction:.6f}\n")


def write_cdf_figure(path, summary: DistributionSummary, title: str = "Score distribution"):
    xs = [x for x, _ in summary.cdf]
    ys = [y for _, y in summary.cdf]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.step(xs, ys, where="post", color="#1f5fa8", linewidth=1.6)
    ax.set_xlabel("fuzzy F1")
    ax.set_ylabel("cumulative fraction of tables")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.05)
    ax.grid(True, linewidth=0.4, alpha=0.5)
    ax.set_title(title)
    fig.tight_layout()
    buffer = io.BytesIO()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(buffer, format="png", dpi=150, metadata={"Software": "schemavec"})
    plt.close(fig)
    with atomic_write(path, "wb") as handle:
        handle.write(buffer.getvalue())


def write_report(out_dir, records: list[EvalRecord], summary: DistributionSummary) -> dict[str, Path]:
    """Write results.tsv, cdf.tsv and cdf.png into out_dir; return the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "results": out_dir / "results.tsv",
        "cdf": out_dir / "cdf.tsv",
        "figure": out_dir / "cdf.png",
    }
    write_results_file(paths["results"], records)
    write_cdf_file(paths["cdf"], summary)
    write_cdf_figure(paths["figure"], summary)
    return paths
