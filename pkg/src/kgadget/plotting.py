"""Figure rendering for sweep reports (written next to the CSV)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .sweep import SweepRow  # noqa: E402


def render_sweep_plot(rows: list[SweepRow], path: str | Path, label: str | None = None) -> None:
    """Log-log error ratio versus coupling strength, one point per sweep row."""
    ok = [r for r in rows if not r.failed]
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    if ok:
        ax.loglog(
            [r.lam for r in ok],
            [r.ratio for r in ok],
            "o-",
            color="tab:blue",
            label=label,
        )
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel("error norm / ideal norm")
    ax.grid(True, which="both", alpha=0.3)
    if label:
        ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
