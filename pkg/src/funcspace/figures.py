"""Static SVG figures for sweep and report outputs (matplotlib, offline).

SVG output is kept byte-deterministic: a fixed hash salt and no embedded
date metadata, so identical runs reproduce identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "funcspace"

import matplotlib.pyplot as plt  # noqa: E402

_SAVE_KW = {"format": "svg", "metadata": {"Date": None}}


def sweep_figure(sweep_id: str, reports: list, path: str) -> str:
    """Ratio and rate-normalized ratio vs step index, one line per member."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    for rep in reports:
        if not rep["params"]:
            continue
        steps = list(range(1, len(rep["params"]) + 1))
        ax1.semilogy(steps, rep["ratios"], marker="o", markersize=3,
                     label=rep["member"])
        ax2.semilogy(steps, rep["normalized"], marker="o", markersize=3,
                     label=rep["member"])
    ax1.set_xlabel("step m")
    ax1.set_ylabel("ratio")
    ax1.set_title(f"{sweep_id}: raw ratio")
    ax2.set_xlabel("step m")
    ax2.set_ylabel("ratio / predicted rate")
    ax2.set_title("rate-normalized")
    ax2.legend(fontsize=7, loc="best")
    for ax in (ax1, ax2):
        ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def constants_figure(check_rows: list, path: str) -> str:
    """Bar chart of worst empirical constants per check id."""
    ids = [row["id"] for row in check_rows]
    consts = [row["worst_constant"] for row in check_rows]
    budgets = [row["budget"] for row in check_rows]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(ids)), 3.6))
    xs = range(len(ids))
    ax.bar(xs, consts, color="#4878a8")
    ax.plot(xs, budgets, color="#a83838", linestyle="--", linewidth=1,
            label="budget")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(ids, rotation=60, ha="right", fontsize=7)
    ax.set_yscale("log")
    ax.set_ylabel("worst empirical constant")
    ax.legend(fontsize=8)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path
