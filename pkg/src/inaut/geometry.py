"""Planar geometry over (lon, lat) geopolygons.

All computations treat coordinates as planar; the areas handled here span
well under a degree, where spherical corrections are below test tolerances.
Houses the partial-inclusion predicate, the area graph built from it, the
closed list of spatial modifiers, and polygon centroids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegeneratePolygon, NoGeoreferencedNodes, UnknownModifier

Point = tuple[float, float]

# Intersection must strictly exceed this share of the smaller area.
PARTIAL_INCLUSION_RATIO = 0.8


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeoPolygon:
    """A simple polygon given by its exterior ring (closed implicitly)."""

    ring: tuple[Point, ...]
    id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ring", tuple((float(x), float(y)) for x, y in self.ring))
        validate_ring(self.ring, self.id)

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.ring]
        ys = [p[1] for p in self.ring]
        return min(xs), min(ys), max(xs), max(ys)

    def translated(self, dx: float, dy: float) -> "GeoPolygon":
        return GeoPolygon(tuple((x + dx, y + dy) for x, y in self.ring), self.id)

    def scaled(self, factor: float) -> "GeoPolygon":
        return GeoPolygon(tuple((x * factor, y * factor) for x, y in self.ring), self.id)


def validate_ring(ring: tuple[Point, ...], label: str = "") -> None:
    tag = f" ({label})" if label else ""
    if len(ring) < 3:
        raise DegeneratePolygon(f"polygon{tag} needs at least 3 vertices, got {len(ring)}")
    n = len(ring)
    for i in range(n):
        if ring[i] == ring[(i + 1) % n]:
            raise DegeneratePolygon(f"polygon{tag} repeats consecutive vertex {ring[i]}")
    if abs(signed_ring_area(ring)) == 0.0:
        raise DegeneratePolygon(f"polygon{tag} has zero area (collinear vertices)")
    if not _ring_is_simple(ring):
        raise DegeneratePolygon(f"polygon{tag} is self-intersecting")


def signed_ring_area(ring: tuple[Point, ...]) -> float:
    acc = 0.0
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return acc / 2.0


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1 = _orient(c, d, a)
    d2 = _orient(c, d, b)
    d3 = _orient(a, b, c)
    d4 = _orient(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and _on_segment(c, d, a):
        return True
    if d2 == 0 and _on_segment(c, d, b):
        return True
    if d3 == 0 and _on_segment(a, b, c):
        return True
    if d4 == 0 and _on_segment(a, b, d):
        return True
    return False


def _ring_is_simple(ring: tuple[Point, ...]) -> bool:
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share one endpoint by construction
            c, d = ring[j], ring[(j + 1) % n]
            if _segments_cross(a, b, c, d):
                return False
    return True


def polygon_area(p: GeoPolygon) -> float:
    """Unsigned area in square degrees (shoelace formula)."""
    return abs(signed_ring_area(p.ring))


def barycenter(p: GeoPolygon) -> Point:
    """Area-weighted centroid of the polygon."""
    a = signed_ring_area(p.ring)
    cx = cy = 0.0
    n = len(p.ring)
    for i in range(n):
        x0, y0 = p.ring[i]
        x1, y1 = p.ring[(i + 1) % n]
        f = x0 * y1 - x1 * y0
        cx += (x0 + x1) * f
        cy += (y0 + y1) * f
    return cx / (6.0 * a), cy / (6.0 * a)


def convex_hull(points: list[Point]) -> list[Point]:
    """Andrew monotone chain; returns hull vertices in CCW order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Point] = []
        for q in seq:
            while len(out) >= 2 and _orient(out[-2], out[-1], q) <= 0:
                out.pop()
            out.append(q)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def is_convex(ring: tuple[Point, ...]) -> bool:
    n = len(ring)
    sign = 0
    for i in range(n):
        o = _orient(ring[i], ring[(i + 1) % n], ring[(i + 2) % n])
        if o != 0:
            if sign == 0:
                sign = 1 if o > 0 else -1
            elif (o > 0) != (sign > 0):
                return False
    return True


# ---------------------------------------------------------------------------
# clipping and partial inclusion
# ---------------------------------------------------------------------------

def _ccw_ring(ring: tuple[Point, ...]) -> tuple[Point, ...]:
    return ring if signed_ring_area(ring) > 0 else tuple(reversed(ring))


def clip_convex(subject: tuple[Point, ...], clip: tuple[Point, ...]) -> list[Point]:
    """Sutherland-Hodgman clip of `subject` by a convex `clip` ring."""
    clip = _ccw_ring(clip)
    output = list(subject)
    cp1 = clip[-1]
    for cp2 in clip:
        if not output:
            return []
        inputs = output
        output = []
        s = inputs[-1]
        for e in inputs:
            s_in = _orient(cp1, cp2, s) >= 0
            e_in = _orient(cp1, cp2, e) >= 0
            if e_in:
                if not s_in:
                    output.append(_line_intersection(cp1, cp2, s, e))
                output.append(e)
            elif s_in:
                output.append(_line_intersection(cp1, cp2, s, e))
            s = e
        cp1 = cp2
    return output


def _line_intersection(cp1: Point, cp2: Point, s: Point, e: Point) -> Point:
    dcx, dcy = cp1[0] - cp2[0], cp1[1] - cp2[1]
    dpx, dpy = s[0] - e[0], s[1] - e[1]
    n1 = cp1[0] * cp2[1] - cp1[1] * cp2[0]
    n2 = s[0] * e[1] - s[1] * e[0]
    n3 = 1.0 / (dcx * dpy - dcy * dpx)
    return (n1 * dpx - n2 * dcx) * n3, (n1 * dpy - n2 * dcy) * n3


def intersection_area(p: GeoPolygon, q: GeoPolygon) -> float:
    """Area of p ∩ q. Sutherland-Hodgman when one operand is convex,
    general clipping otherwise."""
    if is_convex(q.ring):
        clipped = clip_convex(p.ring, q.ring)
        return abs(signed_ring_area(tuple(clipped))) if len(clipped) >= 3 else 0.0
    if is_convex(p.ring):
        clipped = clip_convex(q.ring, p.ring)
        return abs(signed_ring_area(tuple(clipped))) if len(clipped) >= 3 else 0.0
    from shapely.geometry import Polygon as _ShapelyPolygon

    return _ShapelyPolygon(p.ring).intersection(_ShapelyPolygon(q.ring)).area


def partial_inclusion(a_prime: GeoPolygon, a: GeoPolygon) -> bool:
    """True iff the intersection covers strictly more than 80% of a_prime."""
    return intersection_area(a_prime, a) > PARTIAL_INCLUSION_RATIO * polygon_area(a_prime)


# ---------------------------------------------------------------------------
# modifiers
# ---------------------------------------------------------------------------

CARDINAL_MODIFIERS = {
    "au nord de": (0, 1),
    "au sud de": (0, -1),
    "à l'est de": (1, 0),
    "à l'ouest de": (-1, 0),
    "au nord-est de": (1, 1),
    "au nord-ouest de": (-1, 1),
    "au sud-est de": (1, -1),
    "au sud-ouest de": (-1, -1),
}

MODIFIER_NAMES = tuple(CARDINAL_MODIFIERS) + ("au fond de", "à l'entrée de", "aux abords de")


@dataclass(frozen=True)
class Modifier:
    """A named location transform ("au nord de", "au fond de", ...)."""

    name: str
    extent_factor: float = 1.0

    def __post_init__(self):
        if self.name not in MODIFIER_NAMES:
            raise UnknownModifier(f"unknown modifier {self.name!r}")


def apply_modifier(m: Modifier, p: GeoPolygon) -> GeoPolygon:
    """Derive the polygon named by the modified expression, e.g. the area
    "au nord de" p is the band adjacent to the north edge of p's bbox."""
    if m.name not in MODIFIER_NAMES:
        raise UnknownModifier(f"unknown modifier {m.name!r}")
    xmin, ymin, xmax, ymax = p.bbox
    w, h = xmax - xmin, ymax - ymin
    f = m.extent_factor
    out_id = f"{m.name} {p.id}".strip()

    if m.name in CARDINAL_MODIFIERS:
        dx, dy = CARDINAL_MODIFIERS[m.name]
        x0, x1 = {-1: (xmin - f * w, xmin), 0: (xmin, xmax), 1: (xmax, xmax + f * w)}[dx]
        y0, y1 = {-1: (ymin - f * h, ymin), 0: (ymin, ymax), 1: (ymax, ymax + f * h)}[dy]
        return GeoPolygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)), out_id)

    if m.name in ("au fond de", "à l'entrée de"):
        ox, oy = _opening_midpoint(p)
        horizontal = w >= h
        if horizontal:
            thirds = [(xmin, xmin + w / 3), (xmin + w / 3, xmin + 2 * w / 3), (xmin + 2 * w / 3, xmax)]
            near = 0 if abs(ox - xmin) < abs(ox - xmax) else 2
        else:
            thirds = [(ymin, ymin + h / 3), (ymin + h / 3, ymin + 2 * h / 3), (ymin + 2 * h / 3, ymax)]
            near = 0 if abs(oy - ymin) < abs(oy - ymax) else 2
        pick = (2 - near) if m.name == "au fond de" else near
        lo, hi = thirds[pick]
        if horizontal:
            return GeoPolygon(((lo, ymin), (hi, ymin), (hi, ymax), (lo, ymax)), out_id)
        return GeoPolygon(((xmin, lo), (xmax, lo), (xmax, hi), (xmin, hi)), out_id)

    # "aux abords de": the surroundings, approximated by the inflated bbox.
    # A true bbox-minus-bbox ring is not representable as a simple
    # hole-free ring, so the feature's own extent stays included.
    mx, my = f * w / 2.0, f * h / 2.0
    return GeoPolygon(
        ((xmin - mx, ymin - my), (xmax + mx, ymin - my), (xmax + mx, ymax + my), (xmin - mx, ymax + my)),
        out_id,
    )


def _opening_midpoint(p: GeoPolygon) -> Point:
    """Midpoint of the longest convex-hull edge, taken as the feature's opening."""
    hull = convex_hull(list(p.ring))
    best, best_len = None, -1.0
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        d = math.dist(a, b)
        if d > best_len:
            best, best_len = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2), d
    return best


# ---------------------------------------------------------------------------
# area graph
# ---------------------------------------------------------------------------

@dataclass
class AreaGraph:
    """Directed graph over area nodes; edge (a, b) means the area of a is
    partially included in the area of b."""

    area_of: dict[str, GeoPolygon] = field(default_factory=dict)
    edges: set[tuple[str, str]] = field(default_factory=set)

    @property
    def nodes(self) -> list[str]:
        return sorted(self.area_of)

    def includes(self, small: str, big: str) -> bool:
        return small == big or (small, big) in self.edges

    def nodes_within(self, zone: GeoPolygon) -> list[str]:
        return sorted(n for n, a in self.area_of.items() if partial_inclusion(a, zone))

    def greatest(self, subset: list[str]) -> str | None:
        """Unique maximum of `subset` under partial inclusion, if any."""
        tops = self.maximal(subset)
        if len(tops) == 1:
            top = tops[0]
            if all(self.includes(n, top) for n in subset):
                return top
        return None

    def maximal(self, subset: list[str]) -> list[str]:
        return sorted(
            m for m in subset
            if not any(g != m and self.includes(m, g) for g in subset)
        )

    def to_dot(self) -> str:
        lines = ["digraph areas {"]
        for n in self.nodes:
            lines.append(f'  "{n}";')
        for a, b in sorted(self.edges):
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines)


def build_area_graph(areas: dict[str, GeoPolygon]) -> AreaGraph:
    """Edge set = every ordered pair whose first area is partially included
    in the second."""
    for node, poly in areas.items():
        try:
            validate_ring(poly.ring, node)
        except DegeneratePolygon as exc:
            raise DegeneratePolygon(f"area node {node!r}: {exc}") from exc
    graph = AreaGraph(area_of=dict(areas))
    names = sorted(areas)
    for small in names:
        for big in names:
            if small != big and partial_inclusion(areas[small], areas[big]):
                graph.edges.add((small, big))
    return graph


# ---------------------------------------------------------------------------
# guiding path
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GuidingPath:
    """Coastal itinerary: barycenters of upper-level section areas, framed
    by the volume extremities."""

    waypoints: tuple[Point, ...]
    source: str = ""

    def __post_init__(self):
        if len(self.waypoints) < 2:
            raise NoGeoreferencedNodes("guiding path needs at least two waypoints")
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if a == b:
                raise ValueError("consecutive guiding-path waypoints must be distinct")

    @property
    def direction(self) -> Point:
        """Unit vector from the first to the last waypoint."""
        (x0, y0), (x1, y1) = self.waypoints[0], self.waypoints[-1]
        d = math.hypot(x1 - x0, y1 - y0)
        return (x1 - x0) / d, (y1 - y0) / d


# ---------------------------------------------------------------------------
# GeoJSON (RFC 7946, exterior ring only)
# ---------------------------------------------------------------------------

def polygon_to_geojson(p: GeoPolygon) -> dict:
    ring = [list(v) for v in p.ring] + [list(p.ring[0])]
    return {"type": "Polygon", "coordinates": [ring]}


def polygon_from_geojson(obj: dict, id: str = "") -> GeoPolygon:
    if not isinstance(obj, dict) or obj.get("type") != "Polygon":
        raise DegeneratePolygon("expected a GeoJSON Polygon object")
    coords = obj.get("coordinates")
    if not coords or not isinstance(coords, list) or len(coords) != 1:
        raise DegeneratePolygon("expected exactly one exterior ring, no holes")
    ring = [tuple(map(float, v)) for v in coords[0]]
    if len(ring) >= 2 and ring[0] == ring[-1]:
        ring = ring[:-1]
    return GeoPolygon(tuple(ring), id)


def areas_to_geojson(areas: dict[str, GeoPolygon]) -> dict:
    """Named area polygons as a GeoJSON FeatureCollection."""
    return {
        "type": "FeatureCollection",
        "features": [
            {"type": "Feature", "id": node, "properties": {},
             "geometry": polygon_to_geojson(areas[node])}
            for node in sorted(areas)
        ],
    }


def areas_from_geojson(obj: dict) -> dict[str, GeoPolygon]:
    if not isinstance(obj, dict) or obj.get("type") != "FeatureCollection":
        raise DegeneratePolygon("expected a GeoJSON FeatureCollection")
    out: dict[str, GeoPolygon] = {}
    for feature in obj.get("features", ()):
        node = feature.get("id") or feature.get("properties", {}).get("id")
        if not node:
            raise DegeneratePolygon("every feature needs an id")
        out[str(node)] = polygon_from_geojson(feature.get("geometry", {}), str(node))
    return out
