"""Component ordering, start-node selection and the relation walk."""

from __future__ import annotations

import random

import pytest

from inaut.content import components_of, select_subgraph, tag_components
from inaut.doc import guiding_path
from inaut.errors import EmptyComponent
from inaut.fixtures import banyuls_area_graph, banyuls_doc, banyuls_kb
from inaut.geometry import GeoPolygon, GuidingPath, build_area_graph
from inaut.kb import (
    ConceptSchema,
    Instance,
    KbGraph,
    KnowledgeBase,
    LexicalAttrs,
    ROLE_AGENT,
    ROLE_PATIENT,
    RelationInstance,
    SimpleRelationSchema,
    VerbLexeme,
    full_graph,
)
from inaut.planning import order_relations, select_start_node, sort_components
from inaut.weights import WeightConfig


def _rect(x0, y0, x1, y1, id):
    return GeoPolygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)), id)


def _component_kb(n_nodes: int, edges: list[tuple[int, int, str]],
                  areas: dict[int, GeoPolygon] | None = None) -> KbGraph:
    kb = KnowledgeBase()
    kb.concepts["lieu"] = ConceptSchema("lieu", "lieu", ())
    kb.simple_relations["lie"] = SimpleRelationSchema(
        "lie", "lie", "lieu", "lieu",
        VerbLexeme(active_3s="lie", active_3p="lient",
                   passive_participle={"m.sg": "lié", "f.sg": "liée",
                                       "m.pl": "liés", "f.pl": "liées"}))
    areas = areas or {}
    for i in range(n_nodes):
        geo = f"a{i}" if i in areas else None
        kb.instances[f"n{i}"] = Instance(f"n{i}", f"noeud{i}", ("lieu",), geo, LexicalAttrs())
    for a, b, rid in edges:
        kb.relation_instances[rid] = RelationInstance(
            rid, "lie", {ROLE_AGENT: f"n{a}", ROLE_PATIENT: f"n{b}"})
    return full_graph(kb)


PATH = GuidingPath(waypoints=((10.0, 0.0), (0.0, 10.0)))  # SE -> NW


def _singleton(kb_graph_area, name, area_poly):
    kb = KnowledgeBase()
    kb.concepts["lieu"] = ConceptSchema("lieu", "lieu", ())
    kb.instances[name] = Instance(name, name, ("lieu",), area_poly.id, LexicalAttrs())
    return KbGraph(kb, frozenset({name}), frozenset())


def test_sort_larger_component_first():
    big = _rect(0, 0, 10, 1, "big")      # area 10
    small = _rect(5, 5, 6, 6, "small")   # area 1
    graph = build_area_graph({"big": big, "small": small})
    c_small = _singleton(graph, "s", small)
    c_big = _singleton(graph, "b", big)
    ordered = sort_components([c_small, c_big], PATH, WeightConfig(), graph)
    assert [min(c.instance_ids) for c in ordered] == ["b", "s"]


def test_sort_equal_areas_follow_guiding_path():
    areas = {}
    comps = []
    for i in range(5):
        # barycenters march SE -> NW as i grows
        areas[f"p{i}"] = _rect(8 - 2 * i, 2 * i, 9 - 2 * i, 2 * i + 1, f"p{i}")
    graph = build_area_graph(areas)
    for i in (3, 0, 4, 1, 2):  # scrambled input
        comps.append(_singleton(graph, f"c{i}", areas[f"p{i}"]))
    ordered = sort_components(comps, PATH, WeightConfig(), graph)
    assert [min(c.instance_ids) for c in ordered] == ["c0", "c1", "c2", "c3", "c4"]


def test_sort_permutation_invariant():
    rng = random.Random(3)
    areas = {f"p{i}": _rect(i, i, i + 1 + (i % 3), i + 2, f"p{i}") for i in range(6)}
    graph = build_area_graph(areas)
    comps = [_singleton(graph, f"c{i}", areas[f"p{i}"]) for i in range(6)]
    baseline = None
    for _ in range(5):
        shuffled = comps[:]
        rng.shuffle(shuffled)
        got = [min(c.instance_ids) for c in sort_components(shuffled, PATH, WeightConfig(), graph)]
        if baseline is None:
            baseline = got
        assert got == baseline


def test_sort_componentless_area_goes_last():
    graph = build_area_graph({"p": _rect(0, 0, 1, 1, "p")})
    geo = _singleton(graph, "g", graph.area_of["p"])
    no_geo = _component_kb(1, [])
    ordered = sort_components([no_geo, geo], PATH, WeightConfig(), graph)
    assert ordered[-1] is no_geo


# --- start node ----------------------------------------------------------------

def test_start_node_fixture_prefers_bay():
    kb, doc, graph = banyuls_kb(), banyuls_doc(), banyuls_area_graph()
    subgraph = select_subgraph(kb, graph, graph.area_of["zone-2.2.4"])
    [component] = components_of(subgraph)
    start = select_start_node(component, graph, WeightConfig(),
                              parent_title="Port de Banyuls-sur-Mer",
                              parent_area=graph.area_of["zone-2.2.4"])
    assert start == "baie-de-banyuls"
    assert start != "cap-d-osne"


def test_start_node_single_node():
    comp = _component_kb(1, [])
    assert select_start_node(comp, build_area_graph({}), WeightConfig()) == "n0"


def test_start_node_lattice_maximum_wins():
    inner = _rect(0.2, 0.2, 0.4, 0.4, "inner")
    outer = _rect(0, 0, 1, 1, "outer")
    graph = build_area_graph({"inner": inner, "outer": outer})
    comp = _component_kb(2, [(0, 1, "r0")], areas={0: inner, 1: outer})
    kb = comp.kb
    kb.instances["n0"] = Instance("n0", "noeud0", ("lieu",), "inner", LexicalAttrs())
    kb.instances["n1"] = Instance("n1", "noeud1", ("lieu",), "outer", LexicalAttrs())
    weights = WeightConfig(semantic_weight={}, title_match_weight=0.0, lattice_weight=5.0)
    assert select_start_node(comp, graph, weights) == "n1"


def test_start_node_empty_component():
    comp = KbGraph(KnowledgeBase(), frozenset(), frozenset())
    with pytest.raises(EmptyComponent):
        select_start_node(comp, build_area_graph({}), WeightConfig())


def test_start_node_tie_breaks_by_id():
    comp = _component_kb(2, [(0, 1, "r0")])
    weights = WeightConfig(semantic_weight={}, title_match_weight=0.0, lattice_weight=0.0)
    assert select_start_node(comp, build_area_graph({}), weights) == "n0"


# --- relation ordering -----------------------------------------------------------

def test_order_relations_path_graph():
    comp = _component_kb(3, [(0, 1, "r1"), (1, 2, "r2")])
    seq = order_relations(comp, "n0", WeightConfig())
    assert seq == (("r1", "n0"), ("r2", "n1"))


def test_order_relations_star_id_tiebreak():
    comp = _component_kb(4, [(0, 3, "rc"), (0, 1, "ra"), (0, 2, "rb")])
    seq = order_relations(comp, "n0", WeightConfig())
    assert [rid for rid, _ in seq] == ["ra", "rb", "rc"]
    assert all(anchor == "n0" for _, anchor in seq)


def test_order_relations_weight_overrides_id():
    comp = _component_kb(4, [(0, 3, "rc"), (0, 1, "ra"), (0, 2, "rb")])
    weights = WeightConfig(relation_weight={"lie": 0.0})
    comp.kb.simple_relations["top"] = SimpleRelationSchema(
        "top", "top", "lieu", "lieu", VerbLexeme(active_3s="tope", active_3p="topent"))
    comp.kb.relation_instances["rc"].schema = "top"
    weights = WeightConfig(relation_weight={"top": 9.0})
    seq = order_relations(comp, "n0", weights)
    assert [rid for rid, _ in seq] == ["rc", "ra", "rb"]


def test_order_relations_fixture_sequence():
    kb, doc, graph = banyuls_kb(), banyuls_doc(), banyuls_area_graph()
    subgraph = select_subgraph(kb, graph, graph.area_of["zone-2.2.4"])
    [component] = components_of(subgraph)
    seq = order_relations(component, "baie-de-banyuls", WeightConfig())
    rids = [rid for rid, _ in seq]
    assert rids == ["r1", "r2", "r3", "r7", "r8", "r4", "r5", "r6", "r9"]
    assert len(rids) == len(set(rids)) == len(component.relation_ids)
    # limit relations come before anything reached through anse de la Ville
    assert rids.index("r1") < rids.index("r4")


def test_order_relations_covers_each_exactly_once_random():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(2, 8)
        edges = []
        for i in range(1, n):
            edges.append((rng.randrange(i), i, f"r{i:02d}"))
        comp = _component_kb(n, edges)
        seq = order_relations(comp, "n0", WeightConfig())
        assert sorted(r for r, _ in seq) == sorted(comp.relation_ids)
