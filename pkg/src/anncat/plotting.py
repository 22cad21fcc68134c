"""Figures for reports, rendered with the Agg backend to image files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .report import _reports  # noqa: E402

PASS_COLOR = "#4c8c4a"
FAIL_COLOR = "#b8453a"


def _slug(text: str) -> str:
    keep = [ch if ch.isalnum() or ch in "-." else "_" for ch in text]
    return "".join(keep).strip("_") or "report"


def plot_instances(obj, path: str | Path, title: str = "") -> Path:
    """Horizontal bars of instance counts per diagram, coloured by verdict."""
    rows = [(f"{section} / {d.diagram}", d.instances, d.passed, len(d.failures))
            for section, rep in _reports(obj) for d in rep.diagrams]
    height = max(2.0, 0.28 * len(rows) + 1.0)
    fig, ax = plt.subplots(figsize=(8, height))
    if rows:
        names, counts, verdicts, fails = zip(*rows)
        ys = range(len(rows))
        ax.barh(ys, [max(c, 0.5) for c in counts], color=[PASS_COLOR if v else FAIL_COLOR for v in verdicts])
        ax.set_yticks(list(ys))
        ax.set_yticklabels(names, fontsize=7)
        ax.invert_yaxis()
        ax.set_xscale("log")
        for y, c, f in zip(ys, counts, fails):
            ax.text(max(c, 0.5), y, f" {c}" + (f" ({f} failing)" if f else ""), va="center", fontsize=6)
    ax.set_xlabel("instances checked")
    ax.set_title(title or "diagram instances")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def plot_strictness(table: dict, path: str | Path, title: str = "") -> Path:
    """One cell per constraint family: identity or not."""
    names = list(table)
    fig, ax = plt.subplots(figsize=(max(3.0, 0.7 * len(names)), 1.6))
    ax.imshow([[1 if table[n] else 0 for n in names]], cmap=matplotlib.colors.ListedColormap(
        [FAIL_COLOR, PASS_COLOR]), vmin=0, vmax=1, aspect="auto")
    for i, n in enumerate(names):
        ax.text(i, 0, f"{n}*\n{'id' if table[n] else 'non-id'}", ha="center", va="center", fontsize=8,
                color="white")
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title(title or "strictness of the target constraints", fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def render(obj, directory: str | Path, stem: str) -> list[Path]:
    """Write every figure that applies to ``obj`` into ``directory``; return the paths."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _slug(stem)
    paths = [plot_instances(obj, out_dir / f"{stem}-instances.png", stem)]
    for section, rep in _reports(obj):
        if "strict" in rep.data:
            tag = "" if section == "strictness" else f"-{_slug(section)}"
            paths.append(plot_strictness(rep.data["strict"], out_dir / f"{stem}{tag}-strictness.png"))
    return paths
