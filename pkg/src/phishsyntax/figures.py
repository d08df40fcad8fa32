"""Bar charts of the cosine grids, written next to the tabular report.

Uses the object-oriented matplotlib API with the Agg canvas so nothing
touches pyplot's global state, and strips PNG metadata so identical
reports give identical bytes.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib import rc_context
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.dpi": 100,
    "savefig.dpi": 100,
}


def plot_cosine_cells(cells, pairs, title, path, width=7.0, height=3.2):
    """Grouped bars, one group per verb and one bar per corpus pair.

    Cells without a score (an empty side) are marked with an "n/a" label
    rather than drawn as zero.
    """
    verbs = list(dict.fromkeys(c.verb for c in cells))
    scores = {(c.verb, c.pair): c.score for c in cells}
    x = np.arange(len(verbs))
    n = max(1, len(pairs))
    bar = 0.8 / n
    with rc_context(STYLE):
        fig = Figure(figsize=(width, height))
        FigureCanvasAgg(fig)
        ax = fig.add_subplot(1, 1, 1)
        for i, pair in enumerate(pairs):
            offs = x - 0.4 + bar * (i + 0.5)
            values = [scores.get((v, tuple(pair))) for v in verbs]
            heights = [0.0 if s is None else s for s in values]
            ax.bar(offs, heights, bar, label=f"{pair[0]} vs {pair[1]}")
            for xo, s in zip(offs, values):
                if s is None:
                    ax.text(xo, 0.02, "n/a", ha="center", va="bottom", rotation=90, fontsize=7)
        ax.set_xticks(x)
        ax.set_xticklabels(verbs)
        ax.set_ylim(0, 1.05)
        ax.set_ylabel("cosine similarity")
        ax.set_title(title)
        if pairs:
            ax.legend(loc="upper left", bbox_to_anchor=(1.0, 1.0), frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="png", metadata={"Software": None})
    return Path(path)


def write_figures(report, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if report.paths is not None:
        written.append(
            plot_cosine_cells(report.paths.cells, report.paths.pairs, "Parse tree paths", out_dir / "paths_cosine.png")
        )
    if report.args is not None:
        a = report.args
        written.append(plot_cosine_cells(a.subject_cells, a.pairs, "Subjects", out_dir / "subjects_cosine.png"))
        written.append(plot_cosine_cells(a.object_cells, a.pairs, "Objects", out_dir / "objects_cosine.png"))
    return written
