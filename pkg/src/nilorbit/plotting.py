"""Figure output for the report verbs. Only the Agg backend is used, so
figures render to files without a display."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .superalgebra import AuditRecord, s_bound  # noqa: E402


def _finish(fig, ax, path: str | Path) -> Path:
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    out = Path(path)
    # fixed metadata keeps repeated renders byte-stable
    fig.savefig(out, dpi=120, metadata={"Software": None} if out.suffix == ".png" else None)
    plt.close(fig)
    return out


def audit_histogram(rec: AuditRecord, path: str | Path) -> Path:
    """Bar chart of sampled weights, with the family bound as a dashed line."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    top = max(rec.max_weight, rec.bound or 0)
    xs = list(range(top + 1))
    ax.bar(xs, [rec.histogram.get(w, 0) for w in xs], color="0.35", width=0.6)
    if rec.bound is not None:
        ax.axvline(rec.bound + 0.4, color="C3", ls="--", lw=1, label=f"bound {rec.bound}")
        ax.legend(frameon=False)
    ax.set_xticks(xs)
    ax.set_xlabel("weight")
    ax.set_ylabel("count")
    ax.set_title(f"{rec.algebra}: {rec.trials} trials, seed {rec.seed}")
    return _finish(fig, ax, path)


def s_table_plot(max_i: int, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    xs = list(range(1, max_i + 1))
    ax.plot(xs, [s_bound(i).value for i in xs], "o-", color="0.2", ms=4)
    ax.set_xlabel("i")
    ax.set_ylabel("s_i")
    ax.set_title("largest weight in n_i")
    return _finish(fig, ax, path)
