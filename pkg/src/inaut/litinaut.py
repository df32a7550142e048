"""From raw controlled-language sentence chains to the literary variant:
conjunction of same-subject-same-verb runs, participial attachment of a
sentence to the phrase it elaborates, subject pronouns for repeated
subjects, and contextual omission of prefixes implied by section titles.

Every merge keeps the pre-merge sentences, so the original sentence
multiset stays recoverable. Bracketed entity names are never altered.
"""

from __future__ import annotations

from dataclasses import replace

from . import french
from .kb import KnowledgeBase
from .planning import GenerationPlan
from .realize import RealizationContext, Sentence, realize_inaut

Chain = list[Sentence]


def merge_conjunction(chain: Chain) -> Chain:
    """Runs of consecutive sentences sharing subject, verb and voice merge
    into one sentence whose differing tails are joined by "et"."""
    out: Chain = []
    i = 0
    while i < len(chain):
        run = [chain[i]]
        while i + len(run) < len(chain) and _conjoinable(chain[i], chain[i + len(run)]):
            run.append(chain[i + len(run)])
        if len(run) == 1:
            out.append(chain[i])
        else:
            tails = [" ".join(s.groups) for s in run]
            combined = " et ".join(tails) if len(tails) == 2 \
                else ", ".join(tails[:-1]) + " et " + tails[-1]
            core = run[0].core_args[:1] + tuple(
                arg for s in run for arg in s.core_args[1:])
            merged = replace(
                run[0],
                groups=(combined,),
                pivot_id=None,
                relation_ids=tuple(r for s in run for r in s.relation_ids),
                core_args=core,
                sources=tuple(run),
            )
            out.append(merged)
        i += len(run)
    return out


def _conjoinable(a: Sentence, b: Sentence) -> bool:
    return (a.override_text is None and b.override_text is None
            and not a.pronominalized and not b.pronominalized
            and a.subject_id is not None and a.subject_id == b.subject_id
            and a.verb_schema == b.verb_schema and a.voice == b.voice
            and a.verb_core == b.verb_core
            and a.default_text == b.default_text
            and not a.suffix_clauses and not b.suffix_clauses)


def merge_relative(chain: Chain) -> Chain:
    """When a sentence's object (or passive agent) is the next sentence's
    subject, the second becomes a participial or relative clause. Applied
    left to right, one merge per host sentence per pass."""
    out: Chain = []
    i = 0
    while i < len(chain):
        host = chain[i]
        nxt = chain[i + 1] if i + 1 < len(chain) else None
        if (nxt is not None and host.override_text is None and nxt.override_text is None
                and host.pivot_id is not None and nxt.subject_id == host.pivot_id
                and not nxt.pronominalized and not nxt.suffix_clauses):
            clause_parts = []
            if nxt.voice == "passive":
                clause_parts.append(nxt.verb_core)
            else:
                clause_parts.append(f"qui {nxt.verb_surface}")
            if nxt.default_text:
                clause_parts.append(nxt.default_text)
            clause_parts.extend(nxt.groups)
            merged = replace(
                host,
                suffix_clauses=host.suffix_clauses + (" ".join(clause_parts),),
                pivot_id=None,
                relation_ids=host.relation_ids + nxt.relation_ids,
                core_args=host.core_args + nxt.core_args,
                sources=(host, nxt),
            )
            out.append(merged)
            i += 2
        else:
            out.append(host)
            i += 1
    return out


def gen_referring(chain: Chain) -> Chain:
    """Repeated subjects under a different verb become subject pronouns,
    unless a same-gender/number core argument of the previous sentence
    competes for the reference."""
    out: Chain = []
    for idx, cur in enumerate(chain):
        if idx == 0:
            out.append(cur)
            continue
        prev = out[-1]
        if (cur.override_text is None and prev.override_text is None
                and not cur.pronominalized
                and cur.subject_id is not None and cur.subject_id == prev.subject_id
                and cur.verb_schema != prev.verb_schema):
            competing = any(
                arg.instance != cur.subject_id
                and (arg.gender, arg.number) == (cur.subject_gender, cur.subject_number)
                for arg in prev.core_args)
            if not competing:
                pronoun = french.SUBJECT_PRONOUN[(cur.subject_gender, cur.subject_number)]
                cur = replace(cur, subject_surface=pronoun, pronominalized=True)
        out.append(cur)
    return out


def contextual_omission(chain: Chain, leaf_type: str,
                        prefixes: dict[str, tuple[str, ...]]) -> Chain:
    """Strip the configured prefixes implied by the subdivision title."""
    out: Chain = []
    for s in chain:
        rendered = s.render()
        for prefix in prefixes.get(leaf_type, ()):
            if rendered.startswith(prefix):
                remainder = rendered[len(prefix):].lstrip()
                s = replace(s, override_text=french.capitalize_first(remainder))
                break
        out.append(s)
    return out


def apply_rules(chain: Chain, leaf_type: str,
                prefixes: dict[str, tuple[str, ...]]) -> Chain:
    chain = merge_conjunction(chain)
    chain = merge_relative(chain)
    chain = gen_referring(chain)
    chain = contextual_omission(chain, leaf_type, prefixes)
    return chain


def realize_component(component, kb: KnowledgeBase) -> Chain:
    """Raw sentences of one planned component, in relation order."""
    context = RealizationContext()
    return [realize_inaut(kb.relation_instances[rid], anchor, kb, context)
            for rid, anchor in component.relation_sequence]


def render_chain(chain: Chain) -> str:
    return " ".join(s.render() for s in chain)


def de_aggregate(chain: Chain) -> list[str]:
    """The original controlled-language sentences behind a chain."""
    out: list[str] = []
    for s in chain:
        out.extend(leaf.inaut_text for leaf in s.leaf_sources())
    return out


def to_litinaut(plan: GenerationPlan, kb: KnowledgeBase,
                prefixes: dict[str, tuple[str, ...]] | None = None) -> str:
    """Realize a whole plan; rule order is conjunction, relative clause,
    pronoun, then omission; merges never cross component boundaries."""
    prefixes = prefixes or {}
    paragraphs = []
    for component in plan.components:
        chain = realize_component(component, kb)
        if not chain:
            continue
        chain = apply_rules(chain, component.tag, prefixes)
        paragraphs.append(render_chain(chain))
    return " ".join(p for p in paragraphs if p)
