"""Knowledge-base structure: validation, snapshot updates, components,
lexicalization and persistence."""

from __future__ import annotations

import pytest

from inaut.errors import ParseError, SchemaVersionMismatch, SignatureMismatch, UnknownEntity, UnknownSchema
from inaut.fixtures import banyuls_kb
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
    add_relation_instance,
    connected_components,
    full_graph,
    lexicalize,
    load,
    persist,
    validate_kb,
)
from inaut.lexicon import Lexicon
from inaut.parser import parse
from inaut.semantics import semantify
from inaut.tokenizer import tokenize


def test_validate_empty_kb():
    assert validate_kb(KnowledgeBase()) == []


def test_validate_fixture_clean():
    assert validate_kb(banyuls_kb()) == []


def test_validate_missing_member_role():
    kb = banyuls_kb()
    kb.relation_instances["bad"] = RelationInstance(
        "bad", "est_limite_par", {"limité": "baie-de-banyuls"}, {"à": "NW"})
    diags = validate_kb(kb)
    assert any(d.rule == "signature-violation" and d.entity == "bad" for d in diags)


def test_validate_concept_cycle():
    kb = KnowledgeBase()
    kb.concepts["a"] = ConceptSchema("a", "a", ("b",))
    kb.concepts["b"] = ConceptSchema("b", "b", ("a",))
    assert any(d.rule == "concept-cycle" for d in validate_kb(kb))


def test_subsumption_is_partial_order_on_fixture():
    kb = banyuls_kb()
    ids = sorted(kb.concepts)
    leq = {(a, b) for a in ids for b in ids if b in kb.subsumers(a)}
    for a in ids:
        assert (a, a) in leq  # reflexive
    for a, b in leq:
        if (b, a) in leq:
            assert a == b  # antisymmetric
    for a, b in leq:
        for c in ids:
            if (b, c) in leq:
                assert (a, c) in leq  # transitive


def test_add_relation_instance_accepted():
    kb = banyuls_kb()
    ri = RelationInstance("new", "abrite",
                          {ROLE_AGENT: "ile-grosse", ROLE_PATIENT: "port"})
    kb2 = add_relation_instance(kb, ri)
    assert "new" in kb2.relation_instances
    assert "new" not in kb.relation_instances  # original snapshot untouched
    assert kb2.version == kb.version + 1
    assert validate_kb(kb2) == []


def test_add_relation_instance_wrong_concept():
    kb = banyuls_kb()
    kb.concepts["navire"] = ConceptSchema("navire", "navire", ())
    kb.instances["bateau"] = Instance("bateau", "bateau", ("navire",), None, LexicalAttrs())
    ri = RelationInstance("bad", "est_limite_par",
                          {"limitant": "bateau", "limité": "baie-de-banyuls"}, {"à": "NW"})
    with pytest.raises(SignatureMismatch):
        add_relation_instance(kb, ri)


def test_add_relation_instance_unknown_schema():
    kb = banyuls_kb()
    with pytest.raises(UnknownSchema):
        add_relation_instance(kb, RelationInstance("x", "nope", {}))


def test_add_duplicate_is_idempotent():
    kb = banyuls_kb()
    dup = RelationInstance("dup", "est_limite_par",
                           {"limitant": "cap-d-osne", "limité": "baie-de-banyuls"},
                           {"à": "NW"})
    kb2 = add_relation_instance(kb, dup)
    assert kb2 is kb  # same fact as r1


def test_add_does_not_create_new_diagnostics():
    kb = banyuls_kb()
    before = validate_kb(kb)
    ri = RelationInstance("new", "domine", {ROLE_AGENT: "port", ROLE_PATIENT: "plage"})
    after = validate_kb(add_relation_instance(kb, ri))
    assert len(after) == len(before) == 0


# --- components ------------------------------------------------------------------

def test_components_empty():
    assert connected_components(KbGraph(KnowledgeBase(), frozenset(), frozenset())) == []


def test_components_fixture_is_one():
    kb = banyuls_kb()
    assert len(connected_components(full_graph(kb))) == 1


def test_components_disjoint_relations():
    kb = banyuls_kb()
    kb.relation_instances = {
        "r4": kb.relation_instances["r4"],  # plage - anse de la Ville
        "r6": kb.relation_instances["r6"],  # anse du Fontaulé - port
    }
    graph = KbGraph(kb, frozenset({"plage", "anse-de-la-ville", "anse-du-fontaule", "port"}),
                    frozenset({"r4", "r6"}))
    assert len(connected_components(graph)) == 2


# --- lexicalization ----------------------------------------------------------------

def test_lexicalize_instance():
    kb = banyuls_kb()
    assert lexicalize(kb, "baie-de-banyuls") == "baie de Banyuls"


def test_lexicalize_complex_relation_tuple():
    kb = banyuls_kb()
    name, member_roles, attr_roles = lexicalize(kb, "est_limite_par")
    assert name == "est limité par"
    assert member_roles == ["limitant", "limité"]
    assert attr_roles == ["à"]


def test_lexicalize_unknown():
    with pytest.raises(UnknownEntity):
        lexicalize(banyuls_kb(), "nope")


# --- symmetric pairs ----------------------------------------------------------------

def _kb_with_symmetric_pair() -> KnowledgeBase:
    kb = banyuls_kb()
    kb.simple_relations["cache"] = SimpleRelationSchema(
        "cache", "cache", "lieu", "lieu",
        VerbLexeme(active_3s="cache", active_3p="cachent"),
        symmetric_of="est_cache_par")
    kb.simple_relations["est_cache_par"] = SimpleRelationSchema(
        "est_cache_par", "est caché par", "lieu", "lieu",
        VerbLexeme(passive_participle={"m.sg": "caché", "f.sg": "cachée",
                                       "m.pl": "cachés", "f.pl": "cachées"}),
        symmetric_of="cache")
    return kb


def test_symmetric_pair_validates():
    assert validate_kb(_kb_with_symmetric_pair()) == []


def test_symmetric_pair_normalizes_to_one_fact():
    kb = _kb_with_symmetric_pair()
    lx = Lexicon.from_kb(kb)
    active = semantify(parse(tokenize(
        "L'[île Grosse] cache le [cap d'Osne].", lx), lx), kb, lx)
    passive = semantify(parse(tokenize(
        "Le [cap d'Osne] est caché par l'[île Grosse].", lx), lx), kb, lx)
    assert active.relation.schema == "cache"
    assert active.canonical_key() == passive.canonical_key()


def test_symmetric_pair_must_swap_signature():
    kb = _kb_with_symmetric_pair()
    kb.concepts["rocher"] = ConceptSchema("rocher", "rocher", ())
    kb.simple_relations["cache"] = SimpleRelationSchema(
        "cache", "cache", "rocher", "lieu",
        VerbLexeme(active_3s="cache"), symmetric_of="est_cache_par")
    diags = validate_kb(kb)
    assert any(d.rule == "symmetric-signature" for d in diags)


# --- persistence -------------------------------------------------------------------

def test_persist_round_trip_fixture():
    kb = banyuls_kb()
    assert load(persist(kb)) == kb


def test_persist_round_trip_empty():
    assert load(persist(KnowledgeBase())) == KnowledgeBase()


def test_persist_stable_output():
    kb = banyuls_kb()
    assert persist(kb) == persist(load(persist(kb)))


def test_load_truncated_raises_parse_error():
    blob = persist(banyuls_kb())[:100]
    with pytest.raises(ParseError):
        load(blob)


def test_load_version_mismatch():
    with pytest.raises(SchemaVersionMismatch):
        load(b'{"schema_version": 99}')


def test_every_tuple_element_round_trips():
    kb = banyuls_kb()
    back = load(persist(kb))
    assert back.concepts == kb.concepts
    assert back.attributes == kb.attributes
    assert back.simple_relations == kb.simple_relations
    assert back.complex_relations == kb.complex_relations
    assert back.values == kb.values
    assert back.instances == kb.instances
    assert back.relation_instances == kb.relation_instances
    assert back.instance_attributes == kb.instance_attributes


def test_graph_dot_export():
    kb = banyuls_kb()
    dot = full_graph(kb).to_dot()
    assert dot.startswith("graph kb {")
    assert '"r3"' in dot and '"plage" -- "anse-de-la-ville"' in dot
