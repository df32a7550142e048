"""Maritime knowledge base: concept hierarchy, attribute and relation
schemas, instances, reified n-ary relations, lexicalization tables, and
JSON persistence.

Knowledge-base values are immutable snapshots: every update returns a new
snapshot and leaves the previous one untouched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any

from .errors import (
    ParseError,
    SchemaVersionMismatch,
    SignatureMismatch,
    UnknownEntity,
    UnknownInstance,
    UnknownSchema,
)

SCHEMA_VERSION = 1

# Canonical member roles of simple relations (active-voice reading).
ROLE_AGENT = "agent"
ROLE_PATIENT = "patient"


class ValueType(str, Enum):
    TEXT = "text"
    NUMBER = "number"
    ENUMERATED = "enumerated"
    BOOLEAN = "boolean"


@dataclass(frozen=True)
class ConceptSchema:
    id: str
    name: str
    parents: tuple[str, ...] = ()


@dataclass(frozen=True)
class AttributeSchema:
    id: str
    name: str
    domain: str
    value_type: ValueType = ValueType.TEXT


@dataclass(frozen=True)
class VerbLexeme:
    """Inflected verb forms; no conjugation engine, every form is stored.

    Passive participles are keyed by "<gender>.<number>" ("f.sg" -> "limitée");
    the auxiliary (est/sont) is chosen from the subject's number.
    """

    active_3s: str | None = None
    active_3p: str | None = None
    passive_participle: dict[str, str] = field(default_factory=dict)
    agent_prep: str = "par"

    @property
    def has_active(self) -> bool:
        return self.active_3s is not None

    @property
    def has_passive(self) -> bool:
        return bool(self.passive_participle)

    def passive_form(self, gender: str, number: str) -> str | None:
        part = self.passive_participle.get(f"{gender}.{number}")
        if part is None:
            return None
        aux = "est" if number == "sg" else "sont"
        return f"{aux} {part}"

    def active_form(self, number: str) -> str | None:
        return self.active_3s if number == "sg" else (self.active_3p or self.active_3s)

    def surface_forms(self) -> list[tuple[str, str, str | None, str | None]]:
        """All (surface, voice, gender, number) tuples this lexeme can take."""
        out: list[tuple[str, str, str | None, str | None]] = []
        if self.active_3s:
            out.append((self.active_3s, "active", None, "sg"))
        if self.active_3p:
            out.append((self.active_3p, "active", None, "pl"))
        for key, part in self.passive_participle.items():
            gender, number = key.split(".")
            aux = "est" if number == "sg" else "sont"
            out.append((f"{aux} {part}", "passive", gender, number))
        return out


@dataclass(frozen=True)
class SimpleRelationSchema:
    """Binary relation without attributes; both voices may be lexicalized.

    Domain and range follow the schema's name orientation (subject side
    first): an actively-named relation has domain = agent, its passive
    twin has domain = patient. Symmetric twins therefore swap the two.
    """

    id: str
    name: str
    domain: str
    range: str
    lexeme: VerbLexeme = field(default_factory=VerbLexeme)
    symmetric_of: str | None = None

    @property
    def agent_concept(self) -> str:
        return self.domain if self.lexeme.has_active else self.range

    @property
    def patient_concept(self) -> str:
        return self.range if self.lexeme.has_active else self.domain


@dataclass(frozen=True)
class MemberRole:
    role: str
    concept: str
    prep: str | None = None  # preposition when realized as a PP


@dataclass(frozen=True)
class AttributeRole:
    role: str
    value_type: ValueType = ValueType.ENUMERATED
    prep: str | None = None  # surface preposition; defaults to the role name
    grouped_with: str | None = None  # member role this attribute must follow


@dataclass(frozen=True)
class DefaultTextRule:
    """Text added by default at realization time, derived from the member
    count of a role family (e.g. "en deux parties")."""

    role_prefix: str
    prep: str = "en"
    noun_singular: str = "partie"
    noun_plural: str = "parties"


@dataclass(frozen=True)
class ComplexRelationSchema:
    id: str
    name: str
    member_roles: tuple[MemberRole, ...]
    attribute_roles: tuple[AttributeRole, ...] = ()
    lexeme: VerbLexeme = field(default_factory=VerbLexeme)
    subject_role: str = ""  # member in subject position (passive voice)
    agent_role: str | None = None  # member in subject position (active voice)
    adjective_role: str | None = None  # attribute role fed by object adjectives
    default_text: DefaultTextRule | None = None

    def member_role(self, role: str) -> MemberRole | None:
        for mr in self.member_roles:
            if mr.role == role:
                return mr
        return None

    def attribute_role(self, role: str) -> AttributeRole | None:
        for ar in self.attribute_roles:
            if ar.role == role:
                return ar
        return None


@dataclass(frozen=True)
class LexicalAttrs:
    gender: str = "m"  # "m" | "f"
    number: str = "sg"  # "sg" | "pl"
    article_policy: str = "definite"  # "definite" | "none" | "indefinite_as_object"
    elision: bool = False  # vowel-initial: l'anse, l'île


@dataclass(frozen=True)
class Instance:
    id: str
    name: str
    concepts: tuple[str, ...]
    geo_ref: str | None = None  # area-graph node id
    lexical: LexicalAttrs = field(default_factory=LexicalAttrs)

    @property
    def georeferenced(self) -> bool:
        return self.geo_ref is not None


@dataclass(frozen=True)
class ValueEntry:
    """An element of the value set; doubles as the lexicon entry for the
    nouns and adjectives that are not instance names."""

    id: str
    name: str
    pos: str = "noun"  # "noun" | "adj"
    prenominal: bool = False  # adjectives only
    gender: str = "m"
    number: str = "sg"
    elision: bool = False


@dataclass
class RelationInstance:
    id: str
    schema: str
    members: dict[str, str]  # role -> instance id
    attributes: dict[str, Any] = field(default_factory=dict)  # role -> value

    def canonical_key(self) -> tuple:
        return (
            self.schema,
            tuple(sorted(self.members.items())),
            tuple(sorted((k, str(v)) for k, v in self.attributes.items())),
        )


@dataclass(frozen=True)
class InstanceAttribute:
    attribute: str
    instance: str
    value: Any


@dataclass
class KnowledgeBase:
    concepts: dict[str, ConceptSchema] = field(default_factory=dict)
    attributes: dict[str, AttributeSchema] = field(default_factory=dict)
    simple_relations: dict[str, SimpleRelationSchema] = field(default_factory=dict)
    complex_relations: dict[str, ComplexRelationSchema] = field(default_factory=dict)
    values: dict[str, ValueEntry] = field(default_factory=dict)
    instances: dict[str, Instance] = field(default_factory=dict)
    relation_instances: dict[str, RelationInstance] = field(default_factory=dict)
    instance_attributes: tuple[InstanceAttribute, ...] = ()
    version: int = 0

    # -- lookups -------------------------------------------------------------

    def subsumers(self, concept_id: str) -> set[str]:
        """The concept and all its ancestors under the hierarchy."""
        seen: set[str] = set()
        stack = [concept_id]
        while stack:
            c = stack.pop()
            if c in seen or c not in self.concepts:
                continue
            seen.add(c)
            stack.extend(self.concepts[c].parents)
        return seen

    def instance_fits_concept(self, instance: Instance, concept_id: str) -> bool:
        return any(concept_id in self.subsumers(c) for c in instance.concepts)

    def relation_schema(self, schema_id: str):
        if schema_id in self.simple_relations:
            return self.simple_relations[schema_id]
        if schema_id in self.complex_relations:
            return self.complex_relations[schema_id]
        return None

    def find_instance_by_name(self, name: str) -> Instance | None:
        for inst in self.instances.values():
            if inst.name == name:
                return inst
        return None

    def concept_names(self) -> set[str]:
        return {c.name for c in self.concepts.values()}

    # -- updates (snapshot semantics) -----------------------------------------

    def with_relation_instance(self, ri: RelationInstance) -> "KnowledgeBase":
        return add_relation_instance(self, ri)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KbDiagnostic:
    entity: str
    rule: str
    message: str


def validate_kb(kb: KnowledgeBase) -> list[KbDiagnostic]:
    """Check every structural invariant; returns diagnostics, never raises."""
    out: list[KbDiagnostic] = []

    def bad(entity: str, rule: str, message: str) -> None:
        out.append(KbDiagnostic(entity, rule, message))

    # concept hierarchy: parents exist, acyclic, names unique
    names_seen: dict[str, str] = {}
    for cid, c in sorted(kb.concepts.items()):
        for p in c.parents:
            if p not in kb.concepts:
                bad(cid, "unknown-parent", f"parent concept {p!r} does not exist")
        if c.name in names_seen:
            bad(cid, "duplicate-concept-name", f"name {c.name!r} already used by {names_seen[c.name]}")
        names_seen[c.name] = cid
    for cid in sorted(kb.concepts):
        if cid in _strict_ancestors(kb, cid):
            bad(cid, "concept-cycle", "concept hierarchy contains a cycle")

    for aid, a in sorted(kb.attributes.items()):
        if a.domain not in kb.concepts:
            bad(aid, "unknown-domain", f"domain concept {a.domain!r} does not exist")

    for sid, s in sorted(kb.simple_relations.items()):
        if s.domain not in kb.concepts:
            bad(sid, "unknown-domain", f"domain concept {s.domain!r} does not exist")
        if s.range not in kb.concepts:
            bad(sid, "unknown-range", f"range concept {s.range!r} does not exist")
        if s.symmetric_of is not None:
            twin = kb.simple_relations.get(s.symmetric_of)
            if twin is None:
                bad(sid, "unknown-symmetric", f"symmetric relation {s.symmetric_of!r} does not exist")
            else:
                if twin.symmetric_of != sid:
                    bad(sid, "asymmetric-link", "symmetric_of link is not mutual")
                if (twin.domain, twin.range) != (s.range, s.domain):
                    bad(sid, "symmetric-signature", "symmetric pair must swap domain and range")

    for rid, r in sorted(kb.complex_relations.items()):
        if len(r.member_roles) < 2:
            bad(rid, "arity", "complex relations need at least two member roles")
        role_names = [mr.role for mr in r.member_roles] + [ar.role for ar in r.attribute_roles]
        if len(role_names) != len(set(role_names)):
            bad(rid, "duplicate-role", "role names must be unique within the schema")
        for mr in r.member_roles:
            if mr.concept not in kb.concepts:
                bad(rid, "unknown-role-concept", f"role {mr.role!r} names unknown concept {mr.concept!r}")
        if r.subject_role and r.member_role(r.subject_role) is None:
            bad(rid, "bad-subject-role", f"subject role {r.subject_role!r} is not a member role")
        if r.agent_role and r.member_role(r.agent_role) is None:
            bad(rid, "bad-agent-role", f"agent role {r.agent_role!r} is not a member role")
        for ar in r.attribute_roles:
            if ar.grouped_with and r.member_role(ar.grouped_with) is None:
                bad(rid, "bad-group", f"attribute {ar.role!r} grouped with unknown member {ar.grouped_with!r}")

    by_predominant: dict[tuple[str, str], str] = {}
    for iid, inst in sorted(kb.instances.items()):
        if not inst.concepts:
            bad(iid, "no-concept", "instance belongs to no concept")
        for c in inst.concepts:
            if c not in kb.concepts:
                bad(iid, "unknown-concept", f"concept {c!r} does not exist")
        if inst.concepts:
            key = (sorted(inst.concepts)[0], inst.name)
            if key in by_predominant:
                bad(iid, "duplicate-name", f"name {inst.name!r} duplicated within concept {key[0]!r}")
            else:
                by_predominant[key] = iid

    for ia in kb.instance_attributes:
        if ia.attribute not in kb.attributes:
            bad(ia.instance, "unknown-attribute", f"attribute {ia.attribute!r} does not exist")
        if ia.instance not in kb.instances:
            bad(ia.instance, "unknown-instance", f"instance {ia.instance!r} does not exist")

    for riid, ri in sorted(kb.relation_instances.items()):
        out.extend(_check_signature(kb, ri))
    return out


def _strict_ancestors(kb: KnowledgeBase, concept_id: str) -> set[str]:
    seen: set[str] = set()
    stack = list(kb.concepts[concept_id].parents) if concept_id in kb.concepts else []
    while stack:
        c = stack.pop()
        if c in seen or c not in kb.concepts:
            continue
        seen.add(c)
        stack.extend(kb.concepts[c].parents)
    return seen


def _check_signature(kb: KnowledgeBase, ri: RelationInstance) -> list[KbDiagnostic]:
    out: list[KbDiagnostic] = []

    def bad(rule: str, message: str) -> None:
        out.append(KbDiagnostic(ri.id, rule, message))

    schema = kb.relation_schema(ri.schema)
    if schema is None:
        bad("unknown-schema", f"relation schema {ri.schema!r} does not exist")
        return out

    if isinstance(schema, SimpleRelationSchema):
        expected_roles = {ROLE_AGENT: schema.agent_concept, ROLE_PATIENT: schema.patient_concept}
        if set(ri.members) != set(expected_roles):
            bad("signature-violation", f"simple relation needs roles {sorted(expected_roles)}")
            return out
        if ri.attributes:
            bad("signature-violation", "simple relations carry no attributes")
        for role, concept in expected_roles.items():
            inst = kb.instances.get(ri.members[role])
            if inst is None:
                bad("unknown-member", f"member {ri.members[role]!r} does not exist")
            elif not kb.instance_fits_concept(inst, concept):
                bad("signature-violation", f"member {inst.id!r} does not fit concept {concept!r}")
        return out

    expected = {mr.role for mr in schema.member_roles}
    if set(ri.members) != expected:
        bad("signature-violation",
            f"members {sorted(ri.members)} do not match roles {sorted(expected)}")
    expected_attrs = {ar.role for ar in schema.attribute_roles}
    if set(ri.attributes) != expected_attrs:
        bad("signature-violation",
            f"attributes {sorted(ri.attributes)} do not match roles {sorted(expected_attrs)}")
    for mr in schema.member_roles:
        iid = ri.members.get(mr.role)
        if iid is None:
            continue
        inst = kb.instances.get(iid)
        if inst is None:
            bad("unknown-member", f"member {iid!r} does not exist")
        elif not kb.instance_fits_concept(inst, mr.concept):
            bad("signature-violation", f"member {iid!r} does not fit concept {mr.concept!r}")
    for ar in schema.attribute_roles:
        if ar.role not in ri.attributes:
            continue
        value = ri.attributes[ar.role]
        if ar.value_type is ValueType.ENUMERATED and value not in kb.values:
            bad("signature-violation", f"value {value!r} for {ar.role!r} is not a declared value")
        if ar.value_type is ValueType.NUMBER and not isinstance(value, (int, float)):
            bad("signature-violation", f"value for {ar.role!r} must be numeric")
        if ar.value_type is ValueType.BOOLEAN and not isinstance(value, bool):
            bad("signature-violation", f"value for {ar.role!r} must be boolean")
    return out


def add_relation_instance(kb: KnowledgeBase, ri: RelationInstance) -> KnowledgeBase:
    """Return a new snapshot containing ri; resubmitting an identical fact
    is an idempotent no-op."""
    schema = kb.relation_schema(ri.schema)
    if schema is None:
        raise UnknownSchema(f"relation schema {ri.schema!r} does not exist")
    for iid in ri.members.values():
        if iid not in kb.instances:
            raise UnknownInstance(f"member instance {iid!r} does not exist")
    problems = _check_signature(kb, ri)
    if problems:
        raise SignatureMismatch("; ".join(f"{d.rule}: {d.message}" for d in problems))

    key = ri.canonical_key()
    for existing in kb.relation_instances.values():
        if existing.canonical_key() == key:
            return kb  # duplicate fact

    new_instances = dict(kb.relation_instances)
    new_instances[ri.id] = ri
    return replace(kb, relation_instances=new_instances, version=kb.version + 1)


# ---------------------------------------------------------------------------
# graph view
# ---------------------------------------------------------------------------

@dataclass
class KbGraph:
    """Undirected view of a KB subset: instances are nodes, simple relation
    instances are edges, complex relation instances are reified nodes."""

    kb: KnowledgeBase
    instance_ids: frozenset[str] = frozenset()
    relation_ids: frozenset[str] = frozenset()

    def __eq__(self, other) -> bool:
        return (isinstance(other, KbGraph)
                and self.instance_ids == other.instance_ids
                and self.relation_ids == other.relation_ids)

    @property
    def is_empty(self) -> bool:
        return not self.instance_ids and not self.relation_ids

    def relations(self) -> list[RelationInstance]:
        return [self.kb.relation_instances[r] for r in sorted(self.relation_ids)]

    def incident_relations(self, instance_id: str) -> list[str]:
        out = []
        for rid in sorted(self.relation_ids):
            ri = self.kb.relation_instances[rid]
            if instance_id in ri.members.values():
                out.append(rid)
        return out

    def georeferenced_instances(self) -> list[Instance]:
        return [self.kb.instances[i] for i in sorted(self.instance_ids)
                if self.kb.instances[i].georeferenced]

    def to_dot(self) -> str:
        lines = ["graph kb {"]
        for iid in sorted(self.instance_ids):
            lines.append(f'  "{iid}" [shape=ellipse];')
        for rid in sorted(self.relation_ids):
            ri = self.kb.relation_instances[rid]
            if isinstance(self.kb.relation_schema(ri.schema), SimpleRelationSchema):
                lines.append(f'  "{ri.members[ROLE_AGENT]}" -- "{ri.members[ROLE_PATIENT]}" [label="{ri.schema}"];')
            else:
                lines.append(f'  "{rid}" [shape=box,label="{ri.schema}"];')
                for role, iid in sorted(ri.members.items()):
                    lines.append(f'  "{rid}" -- "{iid}" [label="{role}"];')
        lines.append("}")
        return "\n".join(lines)


def full_graph(kb: KnowledgeBase) -> KbGraph:
    return KbGraph(kb, frozenset(kb.instances), frozenset(kb.relation_instances))


def connected_components(graph: KbGraph) -> list[KbGraph]:
    """Partition under undirected adjacency; reified relation nodes connect
    all their members. Singleton instances become singleton components."""
    kb = graph.kb
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for iid in graph.instance_ids:
        parent[iid] = iid
    for rid in graph.relation_ids:
        parent[rid] = rid
        ri = kb.relation_instances[rid]
        for iid in ri.members.values():
            if iid not in parent:
                parent[iid] = iid
            union(rid, iid)

    groups: dict[str, tuple[set[str], set[str]]] = {}
    for node in parent:
        root = find(node)
        insts, rels = groups.setdefault(root, (set(), set()))
        if node in kb.relation_instances and node in graph.relation_ids:
            rels.add(node)
        elif node in kb.instances:
            insts.add(node)
    out = [
        KbGraph(kb, frozenset(insts), frozenset(rels))
        for _, (insts, rels) in sorted(groups.items())
    ]
    return [g for g in out if not g.is_empty]


def lexicalize(kb: KnowledgeBase, entity_id: str):
    """Surface name(s) of an entity. Complex relation schemas return the
    full lexicalization tuple (name, member role names, attribute role names)."""
    if entity_id in kb.instances:
        return kb.instances[entity_id].name
    if entity_id in kb.concepts:
        return kb.concepts[entity_id].name
    if entity_id in kb.values:
        return kb.values[entity_id].name
    if entity_id in kb.attributes:
        return kb.attributes[entity_id].name
    if entity_id in kb.simple_relations:
        return kb.simple_relations[entity_id].name
    if entity_id in kb.complex_relations:
        r = kb.complex_relations[entity_id]
        return (r.name, [mr.role for mr in r.member_roles], [ar.role for ar in r.attribute_roles])
    raise UnknownEntity(f"no entity with id {entity_id!r}")


# ---------------------------------------------------------------------------
# persistence (UTF-8 JSON, stable key order)
# ---------------------------------------------------------------------------

def persist(kb: KnowledgeBase) -> bytes:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "version": kb.version,
        "concepts": {cid: {"name": c.name, "parents": sorted(c.parents)}
                     for cid, c in kb.concepts.items()},
        "attributes": {aid: {"name": a.name, "domain": a.domain, "value_type": a.value_type.value}
                       for aid, a in kb.attributes.items()},
        "simple_relations": {sid: _simple_to_dict(s) for sid, s in kb.simple_relations.items()},
        "complex_relations": {rid: _complex_to_dict(r) for rid, r in kb.complex_relations.items()},
        "values": {vid: _value_to_dict(v) for vid, v in kb.values.items()},
        "instances": {iid: _instance_to_dict(i) for iid, i in kb.instances.items()},
        "instance_attributes": sorted(
            [{"attribute": ia.attribute, "instance": ia.instance, "value": ia.value}
             for ia in kb.instance_attributes],
            key=lambda d: (d["instance"], d["attribute"], str(d["value"])),
        ),
        "relation_instances": {rid: {"schema": ri.schema,
                                     "members": dict(sorted(ri.members.items())),
                                     "attributes": dict(sorted(ri.attributes.items()))}
                               for rid, ri in kb.relation_instances.items()},
    }
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2).encode("utf-8")


def _simple_to_dict(s: SimpleRelationSchema) -> dict:
    return {
        "name": s.name,
        "domain": s.domain,
        "range": s.range,
        "lexeme": _lexeme_to_dict(s.lexeme),
        "symmetric_of": s.symmetric_of,
    }


def _complex_to_dict(r: ComplexRelationSchema) -> dict:
    return {
        "name": r.name,
        "member_roles": [{"role": mr.role, "concept": mr.concept, "prep": mr.prep}
                         for mr in r.member_roles],
        "attribute_roles": [{"role": ar.role, "value_type": ar.value_type.value,
                             "prep": ar.prep, "grouped_with": ar.grouped_with}
                            for ar in r.attribute_roles],
        "lexeme": _lexeme_to_dict(r.lexeme),
        "subject_role": r.subject_role,
        "agent_role": r.agent_role,
        "adjective_role": r.adjective_role,
        "default_text": None if r.default_text is None else {
            "role_prefix": r.default_text.role_prefix,
            "prep": r.default_text.prep,
            "noun_singular": r.default_text.noun_singular,
            "noun_plural": r.default_text.noun_plural,
        },
    }


def _lexeme_to_dict(lx: VerbLexeme) -> dict:
    return {
        "active_3s": lx.active_3s,
        "active_3p": lx.active_3p,
        "passive_participle": dict(sorted(lx.passive_participle.items())),
        "agent_prep": lx.agent_prep,
    }


def _value_to_dict(v: ValueEntry) -> dict:
    return {"name": v.name, "pos": v.pos, "prenominal": v.prenominal,
            "gender": v.gender, "number": v.number, "elision": v.elision}


def _instance_to_dict(i: Instance) -> dict:
    return {
        "name": i.name,
        "concepts": sorted(i.concepts),
        "geo_ref": i.geo_ref,
        "lexical": {"gender": i.lexical.gender, "number": i.lexical.number,
                    "article_policy": i.lexical.article_policy, "elision": i.lexical.elision},
    }


def load(data: bytes) -> KnowledgeBase:
    try:
        doc = json.loads(data.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid KB file: {exc.msg}", exc.lineno, exc.colno) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"KB file is not UTF-8: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("KB file must contain a JSON object")
    found = doc.get("schema_version")
    if found != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"expected schema_version {SCHEMA_VERSION}, found {found}")
    try:
        return _kb_from_dict(doc)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed KB file: {exc!r}") from exc


def _kb_from_dict(doc: dict) -> KnowledgeBase:
    lexeme = lambda d: VerbLexeme(
        active_3s=d.get("active_3s"),
        active_3p=d.get("active_3p"),
        passive_participle=dict(d.get("passive_participle", {})),
        agent_prep=d.get("agent_prep", "par"),
    )
    kb = KnowledgeBase(version=int(doc.get("version", 0)))
    for cid, c in doc.get("concepts", {}).items():
        kb.concepts[cid] = ConceptSchema(cid, c["name"], tuple(c.get("parents", ())))
    for aid, a in doc.get("attributes", {}).items():
        kb.attributes[aid] = AttributeSchema(aid, a["name"], a["domain"], ValueType(a["value_type"]))
    for sid, s in doc.get("simple_relations", {}).items():
        kb.simple_relations[sid] = SimpleRelationSchema(
            sid, s["name"], s["domain"], s["range"], lexeme(s.get("lexeme", {})), s.get("symmetric_of"))
    for rid, r in doc.get("complex_relations", {}).items():
        dt = r.get("default_text")
        kb.complex_relations[rid] = ComplexRelationSchema(
            rid, r["name"],
            tuple(MemberRole(m["role"], m["concept"], m.get("prep")) for m in r["member_roles"]),
            tuple(AttributeRole(a["role"], ValueType(a.get("value_type", "enumerated")),
                                a.get("prep"), a.get("grouped_with"))
                  for a in r.get("attribute_roles", ())),
            lexeme(r.get("lexeme", {})),
            r.get("subject_role", ""),
            r.get("agent_role"),
            r.get("adjective_role"),
            None if dt is None else DefaultTextRule(
                dt["role_prefix"], dt.get("prep", "en"),
                dt.get("noun_singular", "partie"), dt.get("noun_plural", "parties")),
        )
    for vid, v in doc.get("values", {}).items():
        kb.values[vid] = ValueEntry(vid, v["name"], v.get("pos", "noun"), v.get("prenominal", False),
                                    v.get("gender", "m"), v.get("number", "sg"), v.get("elision", False))
    for iid, i in doc.get("instances", {}).items():
        lex = i.get("lexical", {})
        kb.instances[iid] = Instance(
            iid, i["name"], tuple(i.get("concepts", ())), i.get("geo_ref"),
            LexicalAttrs(lex.get("gender", "m"), lex.get("number", "sg"),
                         lex.get("article_policy", "definite"), lex.get("elision", False)))
    kb.instance_attributes = tuple(
        InstanceAttribute(ia["attribute"], ia["instance"], ia["value"])
        for ia in doc.get("instance_attributes", ()))
    for rid, ri in doc.get("relation_instances", {}).items():
        kb.relation_instances[rid] = RelationInstance(
            rid, ri["schema"], dict(ri.get("members", {})), dict(ri.get("attributes", {})))
    return kb
