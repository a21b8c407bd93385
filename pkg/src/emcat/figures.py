"""Report figures: per-property case counts and corpus sizes.

Rendered only on request by the report path; matplotlib stays an optional
import at module level so library use never touches a display.
"""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_STATUS_COLOR = {"pass": "#2a8f4d", "fail": "#c23b22", "skip": "#8a8a8a"}


def render_figures(report, out_dir: str) -> list[str]:
    """Write the report figures into ``out_dir``; returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = [
        _property_cases(report, os.path.join(out_dir, "properties.png")),
        _corpus_sizes(report, os.path.join(out_dir, "corpora.png")),
    ]
    return paths


def _property_cases(report, path: str) -> str:
    results = list(report.results)
    ids = [r.id for r in results]
    cases = [r.cases for r in results]
    colors = [_STATUS_COLOR[r.status] for r in results]
    height = max(2.5, 0.22 * len(results) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    ypos = range(len(results))
    ax.barh(list(ypos), cases, color=colors)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(ids, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("checked cases")
    ax.set_title("property suite: cases per property")
    handles = [plt.Rectangle((0, 0), 1, 1, color=c)
               for c in _STATUS_COLOR.values()]
    ax.legend(handles, list(_STATUS_COLOR), fontsize=7, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _corpus_sizes(report, path: str) -> str:
    rows = [dict(c) for c in report.corpora]
    names = [r["instance"] for r in rows]
    spaces = [r["spaces"] for r in rows]
    maps = [r["maps"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    xs = range(len(rows))
    ax.bar([x - 0.2 for x in xs], spaces, width=0.4, label="spaces",
           color="#4878b0")
    ax.bar([x + 0.2 for x in xs], maps, width=0.4, label="maps",
           color="#b58b3e")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, fontsize=8)
    ax.set_yscale("symlog")
    ax.set_ylabel("count")
    ax.set_title("corpus sizes")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
