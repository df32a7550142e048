"""Reporting: a chart-style overview figure of the area graph and guiding
path, next to a delimited component summary."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Polygon as MplPolygon

from .geometry import AreaGraph, GuidingPath, barycenter, polygon_area
from .kb import KnowledgeBase
from .planning import GenerationPlan


def render_map(area_graph: AreaGraph, path: GuidingPath, out_path: Path,
               kb: KnowledgeBase | None = None, title: str = "") -> None:
    """Draw every area polygon, highlight instance-linked ones, and overlay
    the guiding path (start marked, direction arrows)."""
    fig, ax = plt.subplots(figsize=(9, 7))
    instance_nodes = set()
    if kb is not None:
        instance_nodes = {i.geo_ref for i in kb.instances.values() if i.geo_ref}
    for node in area_graph.nodes:
        poly = area_graph.area_of[node]
        linked = node in instance_nodes
        patch = MplPolygon(
            list(poly.ring), closed=True,
            facecolor="#78b4d8" if linked else "none",
            edgecolor="#1f4e6b" if linked else "#999999",
            alpha=0.45 if linked else 1.0,
            linewidth=1.2 if linked else 0.8,
        )
        ax.add_patch(patch)
        bx, by = barycenter(poly)
        ax.annotate(node, (bx, by), fontsize=6, ha="center",
                    color="#1f4e6b" if linked else "#777777")
    xs = [p[0] for p in path.waypoints]
    ys = [p[1] for p in path.waypoints]
    ax.plot(xs, ys, "-o", color="#c0392b", markersize=3, linewidth=1.4, label="guiding path")
    ax.annotate("start", path.waypoints[0], fontsize=7, color="#c0392b")
    ax.legend(loc="lower left", fontsize=8)
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    if title:
        ax.set_title(title)
    ax.autoscale()
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def components_tsv(plan: GenerationPlan, kb: KnowledgeBase, area_graph: AreaGraph) -> str:
    """One row per planned component, tab-separated."""
    rows = ["rank\ttag\tstart_node\tinstances\trelations\tcumulated_area"]
    for rank, component in enumerate(plan.components, start=1):
        area = 0.0
        seen = set()
        for inst in component.graph.georeferenced_instances():
            if inst.geo_ref in seen or inst.geo_ref not in area_graph.area_of:
                continue
            seen.add(inst.geo_ref)
            area += polygon_area(area_graph.area_of[inst.geo_ref])
        rows.append("\t".join([
            str(rank),
            component.tag,
            component.start_node or "",
            str(len(component.graph.instance_ids)),
            str(len(component.graph.relation_ids)),
            f"{area:.6f}",
        ]))
    return "\n".join(rows) + "\n"
