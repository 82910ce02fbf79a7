"""Figures rendered next to the delimited report files."""

from __future__ import annotations

from collections import Counter, defaultdict
from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .experiments import RunReport  # noqa: E402

STYLE = {
    "figure.figsize": (6.0, 4.0),
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_b1(worlds: List[dict], path: Path) -> Path:
    """While-loop passes per level against the census bound p(q(i))."""
    pts = Counter((passes, bound) for w in worlds for _, passes, bound in w.get("b1", []))
    fig, ax = plt.subplots()
    if pts:
        xs, ys, sizes = zip(*((b, p, 8 + 4 * c) for (p, b), c in sorted(pts.items())))
        ax.scatter(xs, ys, s=sizes, alpha=0.6, label="(bound, passes), area ~ count")
        top = max(max(xs), max(ys)) + 1
        ax.plot([0, top], [0, top], "k--", lw=1, label="passes = bound")
        ax.legend(loc="upper left", fontsize=8)
    ax.set_xlabel("p(q(i))")
    ax.set_ylabel("learn_all while-passes at level i")
    ax.set_title("learn_all while-passes against p(q(i))")
    return _save(fig, path)


def plot_learn_passes(worlds: List[dict], path: Path) -> Path:
    by_k = defaultdict(list)
    for w in worlds:
        by_k[w["k"]].append(w.get("max_pass_count", 0))
    fig, ax = plt.subplots()
    for k in sorted(by_k):
        ax.hist(by_k[k], bins=range(0, max(by_k[k]) + 2), alpha=0.5, label=f"k = {k}")
    ax.set_xlabel("longest learn_sat run (passes)")
    ax.set_ylabel("worlds")
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_recover(recs: List[dict], path: Path) -> Path:
    table = Counter((r["n"], r["outcome"]) for r in recs if "outcome" in r)
    ns = sorted({n for n, _ in table})
    outcomes = sorted({o for _, o in table})
    fig, ax = plt.subplots()
    bottom = [0] * len(ns)
    for o in outcomes:
        heights = [table.get((n, o), 0) for n in ns]
        ax.bar([str(n) for n in ns], heights, bottom=bottom, label=o)
        bottom = [b + h for b, h in zip(bottom, heights)]
    ax.set_xlabel("variables n")
    ax.set_ylabel("formulas")
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_transform(recs: List[dict], path: Path) -> Path:
    ok = [r["conjuncts"] for r in recs if all(r["checks"].values())]
    bad = [r["conjuncts"] for r in recs if not all(r["checks"].values())]
    fig, ax = plt.subplots()
    bins = range(0, max([0] + ok + bad) + 2)
    ax.hist([ok, bad], bins=bins, stacked=True, label=["preserved", "violated"])
    ax.set_xlabel("conjuncts per instance")
    ax.set_ylabel("instances")
    ax.legend(fontsize=8)
    return _save(fig, path)


def render_figures(r: RunReport, out: Path) -> List[Path]:
    with plt.rc_context(STYLE):
        if r.command == "learn":
            return [plot_b1(r.records, out / "b1_passes.png"), plot_learn_passes(r.records, out / "learn_passes.png")]
        if r.command == "recover":
            return [plot_recover(r.records, out / "recover_outcomes.png")]
        if r.command == "transform":
            return [plot_transform(r.records, out / "transform_sizes.png")]
        d = r.details
        paths = []
        if d.get("worlds"):
            paths.append(plot_b1(d["worlds"], out / "b1_passes.png"))
            paths.append(plot_learn_passes(d["worlds"], out / "learn_passes.png"))
        if d.get("recoveries"):
            paths.append(plot_recover(d["recoveries"], out / "recover_outcomes.png"))
        if d.get("transforms"):
            paths.append(plot_transform(d["transforms"], out / "transform_sizes.png"))
        return paths
