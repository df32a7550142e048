"""Surface realization of relation instances as controlled-language
sentences.

Voice follows the traversal direction: the anchoring node becomes the
subject whenever the lexeme has the form for it. Attribute phrases come
before member phrases unless an attribute is grouped with a member, in
which case it directly follows that member's phrase. Default text (member
counts spelled out, "en deux parties") sits right after the verb.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import french
from .errors import MissingLexicalization
from .kb import (
    ComplexRelationSchema,
    Instance,
    KnowledgeBase,
    RelationInstance,
    ROLE_AGENT,
    ROLE_PATIENT,
    SimpleRelationSchema,
)


@dataclass
class RealizationContext:
    """Per-paragraph state: which instances have already been mentioned
    (drives indefinite-on-first-mention articles)."""

    mentioned: set[str] = field(default_factory=set)


@dataclass(frozen=True)
class CoreArg:
    instance: str
    gender: str
    number: str


@dataclass(frozen=True)
class Sentence:
    """A realized sentence with enough structure for aggregation rules."""

    inaut_text: str  # pristine controlled-language rendering
    relation_ids: tuple[str, ...]
    subject_id: str | None
    subject_surface: str
    subject_gender: str
    subject_number: str
    verb_schema: str
    voice: str
    verb_aux: str | None  # "est"/"sont" for passives, None otherwise
    verb_core: str  # participle or active verb form
    default_text: str | None
    groups: tuple[str, ...]  # post-verb chunks (object, then prepositional groups)
    pivot_id: str | None  # non-subject core participant (object / passive agent)
    core_args: tuple[CoreArg, ...]  # pronoun-competition candidates
    suffix_clauses: tuple[str, ...] = ()  # appended by relative merges
    override_text: str | None = None  # set by contextual omission
    pronominalized: bool = False
    sources: tuple["Sentence", ...] = ()  # pre-merge sentences

    @property
    def verb_surface(self) -> str:
        return f"{self.verb_aux} {self.verb_core}" if self.verb_aux else self.verb_core

    def render(self) -> str:
        if self.override_text is not None:
            return self.override_text
        parts = [self.subject_surface, self.verb_surface]
        if self.default_text:
            parts.append(self.default_text)
        parts.extend(self.groups)
        text = " ".join(parts)
        for clause in self.suffix_clauses:
            text += ", " + clause
        return french.capitalize_first(text) + "."

    def leaf_sources(self) -> list["Sentence"]:
        if not self.sources:
            return [self]
        out: list[Sentence] = []
        for s in self.sources:
            out.extend(s.leaf_sources())
        return out


def _np_parts(inst: Instance, kb: KnowledgeBase, context: RealizationContext,
              object_position: bool) -> tuple[str | None, str]:
    """(article, display name); brackets mark georeferenced entities."""
    name = f"[{inst.name}]" if inst.georeferenced else inst.name
    lex = inst.lexical
    policy = lex.article_policy
    if policy == "none":
        article = None
    elif (policy == "indefinite_as_object" and object_position
          and inst.id not in context.mentioned):
        article = french.indefinite_article(lex.gender, lex.number)
    else:
        article = french.definite_article(lex.gender, lex.number, lex.elision)
    context.mentioned.add(inst.id)
    return article, name


def _np_surface(inst: Instance, kb: KnowledgeBase, context: RealizationContext,
                object_position: bool) -> str:
    article, name = _np_parts(inst, kb, context, object_position)
    return french.attach(article, name) if article else name


def _value_phrase(prep: str, value_id, kb: KnowledgeBase) -> str:
    value = kb.values.get(str(value_id))
    if value is None:
        return f"{prep} {value_id}"
    article = "l'" if value.elision else french.DEFINITE[(value.gender, value.number)]
    return french.prep_phrase(prep, article, value.name)


def _member_phrase(prep: str, inst: Instance, kb: KnowledgeBase,
                   context: RealizationContext, object_position: bool) -> str:
    article, name = _np_parts(inst, kb, context, object_position)
    return french.prep_phrase(prep, article, name)


def realize_inaut(ri: RelationInstance, anchor: str, kb: KnowledgeBase,
                  context: RealizationContext | None = None) -> Sentence:
    """Render one relation instance, anchored at the given member."""
    context = context or RealizationContext()
    schema = kb.relation_schema(ri.schema)
    if schema is None:
        raise MissingLexicalization(f"no schema {ri.schema!r}")
    if isinstance(schema, SimpleRelationSchema):
        return _realize_simple(ri, schema, anchor, kb, context)
    return _realize_complex(ri, schema, anchor, kb, context)


def _pick_voice(schema, anchor: str, subject_of_passive: str | None,
                subject_of_active: str | None) -> str:
    lex = schema.lexeme
    if anchor == subject_of_active and lex.has_active:
        return "active"
    if anchor == subject_of_passive and lex.has_passive:
        return "passive"
    if lex.has_passive:
        return "passive"
    if lex.has_active:
        return "active"
    raise MissingLexicalization(f"{schema.id!r} has no verb forms")


def _verb(schema, voice: str, subject: Instance) -> tuple[str | None, str]:
    lex = schema.lexeme
    if voice == "passive":
        form = lex.passive_form(subject.lexical.gender, subject.lexical.number)
        if form is None:
            raise MissingLexicalization(
                f"{schema.id!r} lacks a passive participle for "
                f"{subject.lexical.gender}.{subject.lexical.number}")
        aux, core = form.split(" ", 1)
        return aux, core
    form = lex.active_form(subject.lexical.number)
    if form is None:
        raise MissingLexicalization(f"{schema.id!r} lacks an active form")
    return None, form


def _realize_simple(ri, schema: SimpleRelationSchema, anchor, kb, context) -> Sentence:
    agent = kb.instances[ri.members[ROLE_AGENT]]
    patient = kb.instances[ri.members[ROLE_PATIENT]]
    voice = _pick_voice(schema, anchor, patient.id, agent.id)
    subject = agent if voice == "active" else patient
    aux, core = _verb(schema, voice, subject)
    subject_surface = _np_surface(subject, kb, context, object_position=False)
    core_args = [CoreArg(subject.id, subject.lexical.gender, subject.lexical.number)]
    if voice == "active":
        obj_surface = _np_surface(patient, kb, context, object_position=True)
        groups = (obj_surface,)
        pivot = patient.id
        core_args.append(CoreArg(patient.id, patient.lexical.gender, patient.lexical.number))
    else:
        groups = (_member_phrase(schema.lexeme.agent_prep, agent, kb, context,
                                 object_position=True),)
        pivot = agent.id
    sent = Sentence(
        inaut_text="", relation_ids=(ri.id,),
        subject_id=subject.id, subject_surface=subject_surface,
        subject_gender=subject.lexical.gender, subject_number=subject.lexical.number,
        verb_schema=schema.id, voice=voice, verb_aux=aux, verb_core=core,
        default_text=None, groups=groups, pivot_id=pivot, core_args=tuple(core_args),
    )
    return replace(sent, inaut_text=sent.render())


def _realize_complex(ri, schema: ComplexRelationSchema, anchor, kb, context) -> Sentence:
    members = {role: kb.instances[iid] for role, iid in ri.members.items()}
    passive_subject = ri.members.get(schema.subject_role)
    active_subject = ri.members.get(schema.agent_role) if schema.agent_role else None
    voice = _pick_voice(schema, anchor, passive_subject, active_subject)

    if voice == "active":
        subject = members[schema.agent_role]
        object_role = schema.subject_role
    else:
        subject = members[schema.subject_role]
        object_role = None
    aux, core = _verb(schema, voice, subject)
    subject_surface = _np_surface(subject, kb, context, object_position=False)
    core_args = [CoreArg(subject.id, subject.lexical.gender, subject.lexical.number)]

    groups: list[str] = []
    pivot: str | None = None
    consumed_roles = {schema.agent_role if voice == "active" else schema.subject_role}
    if object_role is not None:
        obj = members[object_role]
        obj_surface = _np_surface(obj, kb, context, object_position=True)
        if schema.adjective_role and schema.adjective_role in ri.attributes:
            adj = kb.values.get(str(ri.attributes[schema.adjective_role]))
            if adj is not None:
                obj_surface = _insert_adj(obj_surface, adj.name, adj.prenominal)
        groups.append(obj_surface)
        consumed_roles.add(object_role)
        pivot = obj.id
        core_args.append(CoreArg(obj.id, obj.lexical.gender, obj.lexical.number))
    elif voice == "passive" and schema.agent_role and schema.agent_role in ri.members:
        pivot = ri.members[schema.agent_role]

    grouped = {ar.grouped_with: ar for ar in schema.attribute_roles if ar.grouped_with}
    for ar in schema.attribute_roles:
        if ar.role == schema.adjective_role or ar.grouped_with or ar.role not in ri.attributes:
            continue
        if ar.prep is None:
            continue
        groups.append(_value_phrase(ar.prep, ri.attributes[ar.role], kb))
    for mr in schema.member_roles:
        if mr.role in consumed_roles or mr.prep is None:
            continue
        inst = members[mr.role]
        groups.append(_member_phrase(
            mr.prep, inst, kb, context,
            object_position=(mr.role == schema.agent_role)))
        if mr.role in grouped:
            ar = grouped[mr.role]
            if ar.role in ri.attributes and ar.prep is not None:
                groups.append(_value_phrase(ar.prep, ri.attributes[ar.role], kb))

    default_text = None
    if schema.default_text is not None:
        rule = schema.default_text
        count = sum(1 for role in ri.members if role.startswith(rule.role_prefix))
        noun = rule.noun_plural if count > 1 else rule.noun_singular
        default_text = f"{rule.prep} {french.numeral(count)} {noun}"

    sent = Sentence(
        inaut_text="", relation_ids=(ri.id,),
        subject_id=subject.id, subject_surface=subject_surface,
        subject_gender=subject.lexical.gender, subject_number=subject.lexical.number,
        verb_schema=schema.id, voice=voice, verb_aux=aux, verb_core=core,
        default_text=default_text, groups=tuple(groups), pivot_id=pivot,
        core_args=tuple(core_args),
    )
    return replace(sent, inaut_text=sent.render())


def _insert_adj(np_surface: str, adjective: str, prenominal: bool) -> str:
    if prenominal:
        head_at = np_surface.rfind(" ")
        if head_at == -1:
            return f"{adjective} {np_surface}"
        return f"{np_surface[:head_at]} {adjective}{np_surface[head_at:]}"
    return f"{np_surface} {adjective}"
