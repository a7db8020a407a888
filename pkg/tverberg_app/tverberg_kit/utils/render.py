"""Static SVG pictures of planar witnesses.

Coordinates become floats here and only here; nothing drawn feeds back into
a correctness claim.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402
from scipy.spatial import ConvexHull, QhullError  # noqa: E402

from tverberg_kit.core.errors import InputError  # noqa: E402
from tverberg_kit.core.rational import PointConfig, RatVector  # noqa: E402

logger = logging.getLogger(__name__)

PART_COLOURS = ("tab:blue", "tab:orange", "tab:green")


def _outline(xy: np.ndarray) -> np.ndarray:
    """Hull vertices in boundary order; fewer than three points stay as given."""
    if len(xy) < 3:
        return xy
    try:
        return xy[ConvexHull(xy).vertices]
    except QhullError:
        order = np.lexsort((xy[:, 1], xy[:, 0]))
        return xy[[order[0], order[-1]]]


def render_svg(config: PointConfig, path: Path, parts: Optional[Sequence[Sequence[int]]] = None,
               common_point: Optional[RatVector] = None, title: Optional[str] = None) -> Path:
    """Draw the points, each part's hull and the common point to an SVG file."""
    if config.dim != 2:
        raise InputError(f"rendering supports planar configurations only, got dimension {config.dim}")
    xy = np.array([[float(x) for x in p] for p in config.points], dtype=float)

    fig, ax = plt.subplots(figsize=(6, 6))
    try:
        for colour, part in zip(PART_COLOURS, parts or ()):
            outline = _outline(xy[list(part)])
            if len(outline) >= 3:
                ax.add_patch(Polygon(outline, closed=True, facecolor=colour, edgecolor=colour, alpha=0.25))
            elif len(outline) == 2:
                ax.plot(outline[:, 0], outline[:, 1], color=colour, linewidth=2)
            ax.scatter(xy[list(part), 0], xy[list(part), 1], color=colour, zorder=3)
        ax.scatter(xy[:, 0], xy[:, 1], s=10, color="black", zorder=2)
        for (x, y), label in zip(xy, config.labels):
            ax.annotate(label, (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)
        if common_point is not None:
            cx, cy = (float(v) for v in common_point)
            ax.scatter([cx], [cy], marker="*", s=160, color="crimson", zorder=4)
        ax.set_aspect("equal", adjustable="datalim")
        if title:
            ax.set_title(title)
        path = Path(path)
        fig.savefig(path, format="svg", bbox_inches="tight")
    finally:
        plt.close(fig)
    logger.info("wrote %s", path)
    return path
