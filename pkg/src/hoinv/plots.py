"""Figure rendering for the report path.

Every plot takes plain Python sequences (the exact values are rational or
modular; only their integer dimensions are plotted) and writes a PNG next
to the delimited output.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_graded_dims(values, path, title="graded dimensions of the augmentation filtration"):
    qs = list(range(len(values)))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(qs, list(values), marker="o")
    ax.set_xlabel("q")
    ax.set_ylabel("N(q)")
    ax.set_title(title)
    ax.set_xticks(qs)
    if max(values, default=0) > 64:
        ax.set_yscale("log", base=2)
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)


def plot_filtration(dims, path, subgroup_dims=None, title="invariant filtration"):
    qs = list(range(len(dims)))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(qs, list(dims), where="post", marker="o", label="group")
    if subgroup_dims is not None:
        ax.step(qs, list(subgroup_dims), where="post", marker="s",
                linestyle="--", label="subgroup")
        ax.legend()
    ax.set_xlabel("q")
    ax.set_ylabel("dim H_q")
    ax.set_title(title)
    ax.set_xticks(qs)
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)


def plot_ext_table(grid, path, title="layer cohomology dimensions"):
    """grid[q][p] = dim of degree-p cohomology of the level-q layer."""
    fig, ax = plt.subplots(figsize=(6, 4))
    im = ax.imshow(grid, origin="lower", cmap="viridis", aspect="auto")
    ax.set_xlabel("p")
    ax.set_ylabel("q")
    ax.set_title(title)
    ax.set_xticks(range(len(grid[0]) if grid else 0))
    ax.set_yticks(range(len(grid)))
    for q, row in enumerate(grid):
        for p, v in enumerate(row):
            ax.text(p, q, str(v), ha="center", va="center", color="white")
    fig.colorbar(im, ax=ax, shrink=0.8)
    return _finish(fig, path)


def plot_check_summary(summary: dict, path, title="check outcomes"):
    order = ["verified", "violated", "observation", "skipped"]
    colors = {"verified": "tab:green", "violated": "tab:red",
              "observation": "tab:orange", "skipped": "tab:gray"}
    fig, ax = plt.subplots(figsize=(6, 3.5))
    counts = [summary.get(k, 0) for k in order]
    ax.bar(order, counts, color=[colors[k] for k in order])
    ax.set_ylabel("checks")
    ax.set_title(title)
    for i, c in enumerate(counts):
        ax.text(i, c, str(c), ha="center", va="bottom")
    return _finish(fig, path)


def render_report_figures(report, outdir, stem=None) -> list[Path]:
    """Figures for whatever tables the report carries."""
    outdir = Path(outdir)
    stem = stem or report.instance_name
    written = []
    tables = report.tables
    if "graded_algebra_dims" in tables:
        written.append(plot_graded_dims(
            tables["graded_algebra_dims"], outdir / f"{stem}_grades.png",
            title=f"{stem}: graded dimensions"))
    if "filtration_dims" in tables:
        sub = None
        if "restriction" in tables:
            sub = tables["restriction"].get("subgroup_filtration_dims")
        written.append(plot_filtration(
            tables["filtration_dims"], outdir / f"{stem}_filtration.png",
            subgroup_dims=sub, title=f"{stem}: invariant filtration"))
    if "ext_dims" in tables:
        written.append(plot_ext_table(
            tables["ext_dims"], outdir / f"{stem}_ext.png",
            title=f"{stem}: layer cohomology"))
    written.append(plot_check_summary(
        report.summary(), outdir / f"{stem}_checks.png",
        title=f"{stem}: check outcomes"))
    return written
