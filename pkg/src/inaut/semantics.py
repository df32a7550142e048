"""From parse trees to knowledge-base deltas.

Semantification resolves every noun phrase against the KB, binds
prepositional phrases to member and attribute roles, normalizes voice
(active and passive surface forms of the same fact yield one canonical
relation instance), and collects the modifier relations implied by
spatial modifiers. Article checking flags the determiner conventions of
the controlled language without blocking the parse.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from . import french
from .diagnostics import Diagnostic
from .errors import (
    AmbiguityError,
    InautError,
    InautSyntaxError,
    RoleMismatch,
    UnbalancedBracket,
    UnknownLexeme,
)
from .kb import (
    ComplexRelationSchema,
    Instance,
    KnowledgeBase,
    ROLE_AGENT,
    ROLE_PATIENT,
    RelationInstance,
    SimpleRelationSchema,
    ValueEntry,
    ValueType,
)
from .lexicon import Lexicon, suggest
from .parser import InautSentence, NounPhrase, parse
from .tokenizer import split_segments, tokenize


@dataclass(frozen=True)
class KbDelta:
    """What one sentence contributes: a canonical relation instance plus
    the modifier relations and article attributes riding along."""

    relation: RelationInstance
    modifier_relations: tuple[tuple[str, str], ...] = ()  # (modifier name, instance id)
    article_notes: tuple[tuple[str, str], ...] = ()  # (instance id, "indefinite")

    def canonical_key(self) -> tuple:
        return self.relation.canonical_key(), tuple(sorted(self.modifier_relations))


# ---------------------------------------------------------------------------
# noun phrase resolution
# ---------------------------------------------------------------------------

def _resolve_instance(np: NounPhrase, kb: KnowledgeBase, lexicon: Lexicon) -> Instance:
    head = np.nn.head
    if np.nn.is_entity:
        name = np.nn.head_name
        iid = lexicon.entity_id(name)
        if iid is None:
            hints = suggest(name, list(lexicon.entities))
            # span excludes the brackets, so applying a hint replaces the name
            raise UnknownLexeme(f"unknown entity {name!r}", (head.start + 1, head.end - 1), hints)
        return kb.instances[iid]
    readings = [r for r in lexicon.noun_readings(head.surface) if r[0] == "instance"]
    if not readings:
        hints = suggest(head.surface, list(lexicon.nouns) + list(lexicon.entities))
        raise UnknownLexeme(f"unknown name {head.surface!r}", head.span, hints)
    return kb.instances[readings[0][1]]


def _resolve_value(np: NounPhrase, kb: KnowledgeBase, lexicon: Lexicon) -> ValueEntry | None:
    if np.nn.is_entity:
        return None
    for kind, vid in lexicon.noun_readings(np.nn.head.surface):
        if kind == "value":
            return kb.values[vid]
    return None


# ---------------------------------------------------------------------------
# article checking
# ---------------------------------------------------------------------------

def check_articles(ast: InautSentence, kb: KnowledgeBase, lexicon: Lexicon | None = None) -> list[Diagnostic]:
    lexicon = lexicon or Lexicon.from_kb(kb)
    out: list[Diagnostic] = []
    for position, np in ast.noun_phrases():
        implicit = _implicit_det(ast, np)
        det = np.det_surface or implicit
        inst = _try_instance(np, kb, lexicon)
        if inst is None:
            value = _resolve_value(np, kb, lexicon) if lexicon else None
            if value is not None:
                expected = "l'" if value.elision else french.DEFINITE[(value.gender, value.number)]
                if det is not None and det != expected:
                    out.append(Diagnostic(
                        "agreement", np.span,
                        f"value {value.name!r} takes {expected!r}, not {det!r}", (expected,)))
            continue
        policy = inst.lexical.article_policy
        g, n = inst.lexical.gender, inst.lexical.number
        expected_def = french.definite_article(g, n, inst.lexical.elision)
        indefinite = det in ("un", "une", "des")
        # precise spans: the determiner token when present, an insertion
        # point otherwise, so hints can be applied mechanically
        det_span = np.det.span if np.det else (np.span[0], np.span[0])
        if policy == "none":
            if det is not None:
                out.append(Diagnostic(
                    "article-forbidden", det_span,
                    f"{inst.name!r} is used without any article", ("remove the article",)))
            continue
        if det is None:
            out.append(Diagnostic(
                "missing-definite-article", det_span,
                f"{inst.name!r} requires the definite article {expected_def!r}",
                (french.attach(expected_def, ""),)))
            continue
        if indefinite:
            if policy != "indefinite_as_object":
                out.append(Diagnostic(
                    "article-policy", det_span,
                    f"{inst.name!r} takes the definite article", (expected_def,)))
            elif not _object_position(position):
                out.append(Diagnostic(
                    "indefinite-position", det_span,
                    "indefinite articles are used in object position only", (expected_def,)))
            else:
                expected_ind = french.indefinite_article(g, n)
                if det != expected_ind:
                    out.append(Diagnostic(
                        "agreement", det_span,
                        f"{inst.name!r} is {g}/{n}: expected {expected_ind!r}", (expected_ind,)))
        elif det != expected_def:
            out.append(Diagnostic(
                "agreement", det_span,
                f"{inst.name!r} is {g}/{n}: expected {expected_def!r}", (expected_def,)))

    out.extend(_check_verb_agreement(ast, kb, lexicon))
    return out


def _try_instance(np: NounPhrase, kb: KnowledgeBase, lexicon: Lexicon) -> Instance | None:
    try:
        return _resolve_instance(np, kb, lexicon)
    except InautError:
        return None


def _implicit_det(ast: InautSentence, np: NounPhrase) -> str | None:
    for pp in ast.pps:
        if pp.np is np:
            return pp.implicit_det
    return None


def _object_position(position: str) -> bool:
    # Deep-syntax object: the object NP, or the agent behind passive "par".
    return position == "object" or position == "pp:par"


def _check_verb_agreement(ast: InautSentence, kb: KnowledgeBase, lexicon: Lexicon) -> list[Diagnostic]:
    subject = _try_instance(ast.subject, kb, lexicon)
    if subject is None or not ast.verb.readings:
        return []
    g, n = subject.lexical.gender, subject.lexical.number
    for r in ast.verb.readings:
        if (r.gender is None or r.gender == g) and (r.number is None or r.number == n):
            return []
    hints: list[str] = []
    for r in ast.verb.readings:
        schema = kb.relation_schema(r.schema)
        if schema is None:
            continue
        form = (schema.lexeme.passive_form(g, n) if r.voice == "passive"
                else schema.lexeme.active_form(n))
        if form:
            hints.append(form)
    return [Diagnostic(
        "agreement", ast.verb.token.span,
        f"verb does not agree with {subject.name!r} ({g}/{n})", tuple(dict.fromkeys(hints)))]


# ---------------------------------------------------------------------------
# semantify
# ---------------------------------------------------------------------------

def semantify(ast: InautSentence, kb: KnowledgeBase, lexicon: Lexicon | None = None) -> KbDelta:
    """Map a parsed sentence to its canonical KB delta; active and passive
    forms of the same fact produce the same delta."""
    lexicon = lexicon or Lexicon.from_kb(kb)
    if not ast.verb.readings:
        hints = suggest(ast.verb.token.surface, list(lexicon.verbs))
        raise UnknownLexeme(f"unknown verb {ast.verb.token.surface!r}", ast.verb.token.span, hints)

    deltas: list[KbDelta] = []
    first_error: InautError | None = None
    for reading in ast.verb.readings:
        try:
            delta = _bind_reading(ast, reading.schema, reading.voice, kb, lexicon)
        except InautError as exc:
            if first_error is None:
                first_error = exc
            continue
        if all(delta.canonical_key() != d.canonical_key() for d in deltas):
            deltas.append(delta)
    if not deltas:
        raise first_error if first_error else RoleMismatch("no verb reading fits the sentence")
    if len(deltas) > 1:
        raise AmbiguityError("sentence maps to more than one fact", deltas)
    return deltas[0]


def _bind_reading(ast: InautSentence, schema_id: str, voice: str,
                  kb: KnowledgeBase, lexicon: Lexicon) -> KbDelta:
    schema = kb.relation_schema(schema_id)
    subject = _resolve_instance(ast.subject, kb, lexicon)
    modifiers: list[tuple[str, str]] = []
    notes: list[tuple[str, str]] = []
    _collect_np(ast.subject, subject, modifiers, notes)
    if ast.subject.nn.pre_adjectives or ast.subject.nn.post_adjectives:
        raise RoleMismatch("adjectives are not allowed on the subject")

    if isinstance(schema, SimpleRelationSchema):
        members = _bind_simple(ast, schema, voice, subject, kb, lexicon, modifiers, notes)
        schema_id, members = _normalize_symmetric(kb, schema, members)
        ri = _make_instance(schema_id, members, {})
        return KbDelta(ri, tuple(modifiers), tuple(notes))

    members, attributes = _bind_complex(ast, schema, voice, subject, kb, lexicon, modifiers, notes)
    ri = _make_instance(schema_id, members, attributes)
    return KbDelta(ri, tuple(modifiers), tuple(notes))


def _collect_np(np: NounPhrase, inst: Instance | None,
                modifiers: list, notes: list) -> None:
    if np.modifier is not None and inst is not None:
        modifiers.append((np.modifier.lower, inst.id))
    if np.det_surface in ("un", "une") and inst is not None:
        notes.append((inst.id, "indefinite"))


def _bind_simple(ast, schema, voice, subject, kb, lexicon, modifiers, notes) -> dict[str, str]:
    if voice == "active":
        if ast.object is None:
            raise RoleMismatch(f"{schema.name!r} needs an object in active voice")
        obj = _resolve_instance(ast.object, kb, lexicon)
        _collect_np(ast.object, obj, modifiers, notes)
        if ast.pps:
            raise RoleMismatch("simple relations take no prepositional phrases")
        members = {ROLE_AGENT: subject.id, ROLE_PATIENT: obj.id}
    else:
        if ast.object is not None:
            raise RoleMismatch("passive sentences take no object")
        agent_pps = [pp for pp in ast.pps if pp.prep == schema.lexeme.agent_prep]
        if len(agent_pps) != 1 or len(ast.pps) != 1:
            raise RoleMismatch(
                f"passive {schema.name!r} needs exactly one {schema.lexeme.agent_prep!r} phrase")
        agent = _resolve_instance(agent_pps[0].np, kb, lexicon)
        _collect_np(agent_pps[0].np, agent, modifiers, notes)
        members = {ROLE_AGENT: agent.id, ROLE_PATIENT: subject.id}
    for role, concept in ((ROLE_AGENT, schema.agent_concept),
                          (ROLE_PATIENT, schema.patient_concept)):
        inst = kb.instances[members[role]]
        if not kb.instance_fits_concept(inst, concept):
            raise RoleMismatch(f"{inst.name!r} does not fit the {role} concept {concept!r}")
    return members


def _normalize_symmetric(kb: KnowledgeBase, schema: SimpleRelationSchema,
                         members: dict[str, str]) -> tuple[str, dict[str, str]]:
    """Symmetric pairs store one fact, under the lexicographically first id.
    Members are keyed by semantic role, so no swap is needed."""
    if schema.symmetric_of is not None and schema.symmetric_of < schema.id:
        return schema.symmetric_of, dict(members)
    return schema.id, members


def _bind_complex(ast, schema: ComplexRelationSchema, voice, subject, kb, lexicon,
                  modifiers, notes) -> tuple[dict[str, str], dict]:
    members: dict[str, str] = {}
    attributes: dict = {}

    if voice == "active":
        if schema.agent_role is None:
            raise RoleMismatch(f"{schema.name!r} has no active voice")
        members[schema.agent_role] = subject.id
        if ast.object is not None:
            obj = _resolve_instance(ast.object, kb, lexicon)
            _collect_np(ast.object, obj, modifiers, notes)
            members[schema.subject_role] = obj.id
            _bind_object_adjectives(ast.object, schema, attributes, kb, lexicon)
    else:
        if ast.object is not None:
            raise RoleMismatch("passive sentences take no object")
        members[schema.subject_role] = subject.id

    default_seen: int | None = None
    for pp in ast.pps:
        if schema.default_text is not None and pp.prep == schema.default_text.prep:
            count = _match_default_text(pp, schema.default_text)
            if count is not None:
                default_seen = count
                continue
        if _bind_attribute_pp(pp, schema, attributes, kb, lexicon):
            continue
        if _bind_member_pp(pp, schema, members, kb, lexicon, modifiers, notes):
            continue
        raise RoleMismatch(f"no role of {schema.name!r} accepts the phrase "
                           f"{pp.prep!r} + {pp.np.nn.head.surface!r}")

    unbound = [mr.role for mr in schema.member_roles if mr.role not in members]
    if unbound:
        raise RoleMismatch(f"unfilled member roles: {', '.join(unbound)}")
    missing_attrs = [ar.role for ar in schema.attribute_roles if ar.role not in attributes]
    if missing_attrs:
        raise RoleMismatch(f"unfilled attribute roles: {', '.join(missing_attrs)}")
    if schema.default_text is not None and default_seen is not None:
        actual = sum(1 for r in members if r.startswith(schema.default_text.role_prefix))
        if default_seen != actual:
            raise RoleMismatch(
                f"default text says {default_seen} parts, relation has {actual}")
    return members, attributes


def _bind_object_adjectives(np: NounPhrase, schema: ComplexRelationSchema,
                            attributes: dict, kb, lexicon) -> None:
    adjs = list(np.nn.pre_adjectives) + list(np.nn.post_adjectives)
    if not adjs:
        return
    if schema.adjective_role is None:
        raise RoleMismatch(f"{schema.name!r} does not accept object adjectives")
    if len(adjs) > 1:
        raise RoleMismatch("at most one object adjective is supported")
    vid = lexicon.adjectives.get(adjs[0].lower)
    if vid is None:
        raise UnknownLexeme(f"unknown adjective {adjs[0].surface!r}", adjs[0].span,
                            suggest(adjs[0].surface, list(lexicon.adjectives)))
    attributes[schema.adjective_role] = vid


def _match_default_text(pp, rule) -> int | None:
    """Recognize "en deux parties": numeral pre-adjective + the rule noun."""
    nn = pp.np.nn
    if nn.is_entity or len(nn.pre_adjectives) != 1 or nn.post_adjectives:
        return None
    if nn.head.lower not in (rule.noun_plural.lower(), rule.noun_singular.lower()):
        return None
    return french.NUMERAL_WORDS.get(nn.pre_adjectives[0].lower)


def _bind_attribute_pp(pp, schema: ComplexRelationSchema, attributes: dict,
                       kb, lexicon) -> bool:
    value = _resolve_value(pp.np, kb, lexicon)
    for ar in schema.attribute_roles:
        if ar.role in attributes:
            continue
        if (ar.prep or ar.role) != pp.prep:
            continue
        if ar.value_type is ValueType.ENUMERATED:
            if value is None:
                continue
            attributes[ar.role] = value.id
            return True
        if ar.value_type is ValueType.TEXT and not pp.np.nn.is_entity:
            attributes[ar.role] = pp.np.nn.head.surface
            return True
        if ar.value_type is ValueType.NUMBER and not pp.np.nn.is_entity:
            try:
                attributes[ar.role] = float(pp.np.nn.head.surface)
            except ValueError:
                continue
            return True
    return False


def _bind_member_pp(pp, schema: ComplexRelationSchema, members: dict,
                    kb, lexicon, modifiers, notes) -> bool:
    try:
        inst = _resolve_instance(pp.np, kb, lexicon)
    except InautError:
        return False
    for mr in schema.member_roles:
        if mr.role in members or mr.prep != pp.prep:
            continue
        if not kb.instance_fits_concept(inst, mr.concept):
            continue
        members[mr.role] = inst.id
        _collect_np(pp.np, inst, modifiers, notes)
        return True
    return False


def _make_instance(schema_id: str, members: dict[str, str], attributes: dict) -> RelationInstance:
    digest = hashlib.md5(repr((schema_id, sorted(members.items()),
                               sorted((k, str(v)) for k, v in attributes.items()))).encode()).hexdigest()
    return RelationInstance(f"{schema_id}:{digest[:10]}", schema_id, members, attributes)


# ---------------------------------------------------------------------------
# segment validation
# ---------------------------------------------------------------------------

def validate_segment(text: str, kb: KnowledgeBase, lexicon: Lexicon | None = None) -> list[Diagnostic]:
    """Tokenize, parse, article-check and semantify every sentence of the
    segment; returns the union of diagnostics (empty means accepted)."""
    lexicon = lexicon or Lexicon.from_kb(kb)
    out: list[Diagnostic] = []
    for segment, offset in split_segments(text):
        for diag in _validate_sentence(segment, kb, lexicon):
            out.append(diag.shifted(offset))
    return out


def _validate_sentence(segment: str, kb: KnowledgeBase, lexicon: Lexicon) -> list[Diagnostic]:
    try:
        tokens = tokenize(segment, lexicon)
    except UnbalancedBracket as exc:
        return [Diagnostic("unbalanced-bracket", exc.span, str(exc))]
    if not tokens:
        return []
    try:
        ast = parse(tokens, lexicon)
    except UnknownLexeme as exc:
        return [Diagnostic("unknown-lexeme", exc.span, str(exc), tuple(exc.hints))]
    except AmbiguityError as exc:
        return [Diagnostic("ambiguous", (tokens[0].start, tokens[-1].end), str(exc))]
    except InautSyntaxError as exc:
        return [Diagnostic("syntax-error", exc.span, str(exc), tuple(exc.expected))]

    out = list(check_articles(ast, kb, lexicon))
    try:
        semantify(ast, kb, lexicon)
    except UnknownLexeme as exc:
        out.append(Diagnostic("unknown-lexeme", exc.span, str(exc), tuple(exc.hints)))
    except AmbiguityError as exc:
        out.append(Diagnostic("ambiguous", (tokens[0].start, tokens[-1].end), str(exc)))
    except RoleMismatch as exc:
        out.append(Diagnostic("role-mismatch", (tokens[0].start, tokens[-1].end), str(exc)))
    except InautError as exc:
        out.append(Diagnostic("invalid", (tokens[0].start, tokens[-1].end), str(exc)))
    return out
