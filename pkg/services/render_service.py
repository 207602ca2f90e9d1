"""
SVG drawings of planner graphs over their world.

The markup is built from fixed-precision text so equal graphs render to
identical bytes. Layout: one ``<polyline>`` per undirected edge inside
``<g id="edges">``, one ``<circle>`` per vertex inside ``<g id="vertices">``,
and the best path as a single ``<path>`` inside ``<g id="best-path">``.
"""

from typing import List, Optional, Sequence

from configs.logging_config import get_logger
from exceptions import UsageError
from geometry.world import BallGoal, Box, WorldModel
from models import PathResult
from planners.graph import PlannerGraph

from .utils import FileUtils

logger = get_logger(__name__)

CANVAS_SIZE = 800.0
MARGIN = 10.0

STYLE = {
    "background": "#ffffff",
    "obstacle": "#4a4a4a",
    "goal": "#8fd18f",
    "edge": "#7a9cc6",
    "vertex": "#1f3f66",
    "path": "#d62728",
    "start": "#ff9900",
}


class SvgCanvas:
    """Maps world coordinates of a planar world onto the SVG canvas, y pointing up."""

    def __init__(self, bounds: Box, size: float = CANVAS_SIZE):
        if bounds.dimension != 2:
            raise UsageError(f"Only planar worlds can be drawn, got dimension {bounds.dimension}")
        self.bounds = bounds
        span_x = bounds.hi[0] - bounds.lo[0]
        span_y = bounds.hi[1] - bounds.lo[1]
        self.scale = (size - 2 * MARGIN) / max(span_x, span_y)
        self.width = span_x * self.scale + 2 * MARGIN
        self.height = span_y * self.scale + 2 * MARGIN

    def x(self, value: float) -> str:
        return f"{MARGIN + (value - self.bounds.lo[0]) * self.scale:.3f}"

    def y(self, value: float) -> str:
        return f"{MARGIN + (self.bounds.hi[1] - value) * self.scale:.3f}"

    def length(self, value: float) -> str:
        return f"{value * self.scale:.3f}"

    def point(self, p: Sequence[float]) -> str:
        return f"{self.x(p[0])},{self.y(p[1])}"

    def rect(self, box: Box, **attrs: str) -> str:
        extra = "".join(f' {key.replace("_", "-")}="{value}"' for key, value in attrs.items())
        return (
            f'<rect x="{self.x(box.lo[0])}" y="{self.y(box.hi[1])}" '
            f'width="{self.length(box.hi[0] - box.lo[0])}" '
            f'height="{self.length(box.hi[1] - box.lo[1])}"{extra}/>'
        )


def _goal_markup(canvas: SvgCanvas, world: WorldModel) -> str:
    goal = world.goal
    if isinstance(goal, BallGoal):
        return (
            f'<circle cx="{canvas.x(goal.center[0])}" cy="{canvas.y(goal.center[1])}" '
            f'r="{canvas.length(goal.radius)}" fill="{STYLE["goal"]}"/>'
        )
    return canvas.rect(goal, fill=STYLE["goal"])


def render_svg(
    graph: PlannerGraph,
    world: WorldModel,
    best: Optional[PathResult] = None,
    title: Optional[str] = None,
) -> str:
    """
    Draw the graph with obstacles, goal region and the best path highlighted.

    Args:
        graph: Planner graph to draw
        world: Planar world the graph lives in
        best: Best path to highlight; an empty group when absent or not found
        title: Optional ``<title>`` text

    Returns:
        SVG document text ending in a newline
    """
    canvas = SvgCanvas(world.bounds)
    vertices = graph.vertices
    lines: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas.width:.3f}" '
        f'height="{canvas.height:.3f}" viewBox="0 0 {canvas.width:.3f} {canvas.height:.3f}">',
    ]
    if title:
        lines.append(f"<title>{_escape(title)}</title>")
    lines.append(canvas.rect(world.bounds, id="bounds", fill=STYLE["background"], stroke="#000000"))

    lines.append('<g id="obstacles">')
    lines.extend(canvas.rect(box, fill=STYLE["obstacle"]) for box in world.obstacles)
    lines.append("</g>")

    lines.append('<g id="goal">')
    lines.append(_goal_markup(canvas, world))
    lines.append("</g>")

    lines.append(f'<g id="edges" stroke="{STYLE["edge"]}" stroke-width="0.8" fill="none">')
    for u, v in graph.undirected_edges():
        lines.append(f'<polyline points="{canvas.point(vertices[u])} {canvas.point(vertices[v])}"/>')
    lines.append("</g>")

    lines.append(f'<g id="vertices" fill="{STYLE["vertex"]}">')
    lines.extend(
        f'<circle cx="{canvas.x(p[0])}" cy="{canvas.y(p[1])}" r="1.2"/>' for p in vertices
    )
    lines.append("</g>")

    lines.append(
        f'<g id="best-path" stroke="{STYLE["path"]}" stroke-width="2.5" fill="none">'
    )
    if best is not None and best.found:
        waypoints = best.waypoints.waypoints
        moves = " ".join(
            f"{'M' if i == 0 else 'L'}{canvas.point(p)}" for i, p in enumerate(waypoints)
        )
        lines.append(f'<path d="{moves}"/>')
    lines.append("</g>")

    x0 = world.x_init
    lines.append(
        f'<rect id="x-init" x="{float(canvas.x(x0[0])) - 4:.3f}" y="{float(canvas.y(x0[1])) - 4:.3f}" '
        f'width="8" height="8" fill="{STYLE["start"]}"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_svg(path: str, graph: PlannerGraph, world: WorldModel, best: Optional[PathResult] = None, title: Optional[str] = None) -> None:
    """Render and write an SVG file; OutputError on failure."""
    FileUtils.write_text_file(path, render_svg(graph, world, best, title))
    logger.debug("SVG written", path=path, vertices=len(graph))

