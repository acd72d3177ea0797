"""Rate/security-level region figures.

Rendering is deterministic: fixed figure geometry, no timestamps in the PNG
metadata, data points sorted before plotting.  Two runs over the same family
produce byte-identical files.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_region_figure(pairs: dict, c_min: int, path) -> None:
    """Scatter of (rate, level) pairs colored by verdict, with the boundary
    rate + level = C_min drawn for reference.

    pairs maps (rate, level) -> "pass" | "fail".
    """
    fig, ax = plt.subplots(figsize=(4.8, 4.2), dpi=100)
    for verdict, color, marker in (("pass", "#2a7e43", "o"), ("fail", "#b03030", "x")):
        pts = sorted(k for k, v in pairs.items() if v == verdict)
        if pts:
            ax.scatter(
                [p[0] for p in pts],
                [p[1] for p in pts],
                c=color,
                marker=marker,
                s=90,
                label=verdict,
                zorder=3,
            )
    ax.plot([0, c_min], [c_min, 0], color="#777777", linewidth=1, zorder=2)
    ax.set_xlabel("rate")
    ax.set_ylabel("security level")
    ax.set_xticks(range(c_min + 1))
    ax.set_yticks(range(c_min + 1))
    ax.set_xlim(-0.5, c_min + 0.5)
    ax.set_ylim(-0.5, c_min + 0.5)
    ax.grid(True, linewidth=0.4, alpha=0.5, zorder=1)
    ax.legend(loc="upper right")
    ax.set_title(f"achieved pairs, C_min = {c_min}")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
