"""Document structure tree of a coast-pilot volume: rooted, ordered,
five levels of hierarchical subdivisions, leaves holding the prose.
Georeferenced nodes link to area-graph nodes; the guiding path is the
coastal itinerary traced by upper-level section barycenters."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvariantViolation, NoGeoArea, NoGeoreferencedNodes, ParseError
from .geometry import AreaGraph, GuidingPath, Point, barycenter

MAX_SUBDIVISION_LEVEL = 4  # levels 0-4 are hierarchical subdivisions
DEFAULT_LEAF_TYPE = "Généralités"


@dataclass
class DocNode:
    id: str
    title: str
    level: int = 0
    children: list["DocNode"] = field(default_factory=list)
    geo_link: str | None = None  # area-graph node id
    leaf_type: str | None = None  # prose leaves only

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class VolumeMeta:
    title: str
    extremities: tuple[Point, Point]

    def __post_init__(self):
        self.extremities = (tuple(self.extremities[0]), tuple(self.extremities[1]))
        if self.extremities[0] == self.extremities[1]:
            raise InvariantViolation("guiding-path extremities must be distinct")


@dataclass
class DocTree:
    root: DocNode
    meta: VolumeMeta
    _parents: dict[str, str | None] = field(default_factory=dict, repr=False)
    _index: dict[str, DocNode] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._reindex()
        self._validate()

    def _reindex(self) -> None:
        self._parents, self._index = {}, {}

        def walk(node: DocNode, parent: str | None) -> None:
            if node.id in self._index:
                raise InvariantViolation(f"duplicate node id {node.id!r}")
            self._index[node.id] = node
            self._parents[node.id] = parent
            for child in node.children:
                walk(child, node.id)

        walk(self.root, None)

    def _validate(self) -> None:
        if self.root.level != 0:
            raise InvariantViolation("root must be at level 0")
        for node in self.walk():
            for child in node.children:
                if child.level != node.level + 1:
                    raise InvariantViolation(
                        f"level gap: {child.id!r} at level {child.level} under level {node.level}")
            if node.leaf_type is not None and not node.is_leaf:
                raise InvariantViolation(f"non-leaf {node.id!r} carries a prose leaf type")
            if node.leaf_type is None and node.level > MAX_SUBDIVISION_LEVEL:
                raise InvariantViolation(
                    f"subdivision {node.id!r} at level {node.level} exceeds the five-level rule")
            if node.leaf_type is not None and node.level > MAX_SUBDIVISION_LEVEL + 1:
                raise InvariantViolation(f"prose leaf {node.id!r} too deep")

    # -- traversal -------------------------------------------------------------

    def walk(self):
        """Pre-order traversal, children in stored order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> list[DocNode]:
        return [n for n in self.walk() if n.is_leaf]

    def node(self, node_id: str) -> DocNode:
        if node_id not in self._index:
            raise InvariantViolation(f"no node with id {node_id!r}")
        return self._index[node_id]

    def parent(self, node_id: str) -> DocNode | None:
        pid = self._parents.get(node_id)
        return self._index[pid] if pid else None

    def effective_area_node(self, node_id: str) -> str:
        """The node's own area link, or the nearest ancestor's."""
        cur: str | None = node_id
        while cur is not None:
            node = self._index[cur]
            if node.geo_link is not None:
                return node.geo_link
            cur = self._parents[cur]
        raise NoGeoArea(f"node {node_id!r} has no geographic area on itself or any ancestor")


def guiding_path(doc: DocTree, graph: AreaGraph) -> GuidingPath:
    """Barycenters of the areas of georeferenced nodes at levels 1-3, in
    document order, framed by the volume extremities."""
    points: list[Point] = [doc.meta.extremities[0]]
    found = False
    for node in doc.walk():
        if 1 <= node.level <= 3 and node.geo_link is not None:
            found = True
            wp = barycenter(graph.area_of[node.geo_link])
            if points[-1] != wp:
                points.append(wp)
    if not found:
        raise NoGeoreferencedNodes("no georeferenced node at levels 1-3")
    if points[-1] != doc.meta.extremities[1]:
        points.append(doc.meta.extremities[1])
    return GuidingPath(tuple(points), source=doc.meta.title)


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

def save_doc_tree(doc: DocTree) -> bytes:
    def node_dict(n: DocNode) -> dict:
        return {
            "id": n.id,
            "title": n.title,
            "level": n.level,
            "geo_link": n.geo_link,
            "leaf_type": n.leaf_type,
            "children": [node_dict(c) for c in n.children],
        }

    payload = {
        "volume": {"title": doc.meta.title,
                   "extremities": [list(doc.meta.extremities[0]), list(doc.meta.extremities[1])]},
        "root": node_dict(doc.root),
    }
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2).encode("utf-8")


def load_doc_tree(data: bytes) -> DocTree:
    try:
        payload = json.loads(data.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid document file: {exc.msg}", exc.lineno, exc.colno) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"document file is not UTF-8: {exc}") from exc

    def node_from(d: dict) -> DocNode:
        return DocNode(
            id=d["id"],
            title=d.get("title", ""),
            level=int(d.get("level", 0)),
            children=[node_from(c) for c in d.get("children", ())],
            geo_link=d.get("geo_link"),
            leaf_type=d.get("leaf_type"),
        )

    try:
        vol = payload["volume"]
        meta = VolumeMeta(vol["title"], (tuple(vol["extremities"][0]), tuple(vol["extremities"][1])))
        root = node_from(payload["root"])
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed document file: {exc!r}") from exc
    return DocTree(root, meta)
