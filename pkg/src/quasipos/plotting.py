"""Matplotlib figures for bound reports (the ``--figure`` option)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["bounds_figure"]


def bounds_figure(reports, path: str, title: str = "") -> None:
    """Plot best lower and upper bounds per knot, one column per report.

    The format follows the file extension; dates are stripped from the
    metadata so repeated runs write the same file.
    """
    reports = list(reports)
    xs = list(range(len(reports)))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(reports) + 2), 3.5))
    lo = [(x, r.best_lower) for x, r in zip(xs, reports) if r.best_lower is not None]
    hi = [(x, r.best_upper) for x, r in zip(xs, reports) if r.best_upper is not None]
    if lo:
        ax.plot(*zip(*lo), "^", color="tab:blue", label="best lower bound")
    if hi:
        ax.plot(*zip(*hi), "v", color="tab:red", label="best upper bound")
    exact = [(x, r.exact) for x, r in zip(xs, reports) if r.exact is not None]
    if exact:
        ax.plot(*zip(*exact), "o", mfc="none", color="black", ms=10, label="exact q")
    ax.set_xticks(xs)
    ax.set_xticklabels([r.knot for r in reports], rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("q(K)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    meta = {"Date": None} if path.endswith((".svg", ".pdf")) else {}
    with plt.rc_context({"svg.hashsalt": "quasipos"}):
        fig.savefig(path, metadata=meta)
    plt.close(fig)
