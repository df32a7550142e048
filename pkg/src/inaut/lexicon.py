"""Read-only lookup tables over a KB snapshot: surface forms of verbs,
nouns, adjectives and entity names, plus the closed lists of determiners,
prepositions and spatial modifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import french
from .geometry import MODIFIER_NAMES
from .kb import ComplexRelationSchema, KnowledgeBase, SimpleRelationSchema

DETERMINERS = ("le", "la", "l'", "les", "un", "une")
PREPOSITIONS = ("à", "au", "aux", "de", "du", "des", "en", "par", "sur")

ENTITY = "ENTITY"
NOUN = "NOUN"
VERB = "VERB"
ADJ = "ADJ"
MODIF = "MODIF"
DET = "DET"
PREP = "PREP"
PUNCT = "PUNCT"
WORD = "WORD"


@dataclass(frozen=True)
class VerbReading:
    schema: str
    voice: str  # "active" | "passive"
    gender: str | None = None  # required subject gender (passive participles)
    number: str | None = None


@dataclass
class Lexicon:
    kb: KnowledgeBase
    entities: dict[str, str] = field(default_factory=dict)  # bracketed name -> instance id
    nouns: dict[str, list[tuple[str, str]]] = field(default_factory=dict)  # surface -> [(kind, id)]
    adjectives: dict[str, str] = field(default_factory=dict)  # surface -> value id
    verbs: dict[str, list[VerbReading]] = field(default_factory=dict)
    multiword: list[tuple[str, str]] = field(default_factory=list)  # (lower surface, kind), longest first

    @classmethod
    def from_kb(cls, kb: KnowledgeBase) -> "Lexicon":
        lx = cls(kb)
        for inst in kb.instances.values():
            if inst.georeferenced:
                lx.entities[inst.name] = inst.id
            else:
                lx.nouns.setdefault(inst.name.lower(), []).append(("instance", inst.id))
        for val in kb.values.values():
            if val.pos == "adj":
                lx.adjectives[val.name.lower()] = val.id
            else:
                lx.nouns.setdefault(val.name.lower(), []).append(("value", val.id))
        for schema in list(kb.simple_relations.values()) + list(kb.complex_relations.values()):
            for surface, voice, gender, number in schema.lexeme.surface_forms():
                lx.verbs.setdefault(surface.lower(), []).append(
                    VerbReading(schema.id, voice, gender, number))
        seen: set[str] = set()
        for name in MODIFIER_NAMES:
            lx.multiword.append((name.lower(), MODIF))
            seen.add(name.lower())
        for surface in lx.verbs:
            if " " in surface and surface not in seen:
                lx.multiword.append((surface, VERB))
                seen.add(surface)
        for surface in lx.nouns:
            if " " in surface and surface not in seen:
                lx.multiword.append((surface, NOUN))
                seen.add(surface)
        lx.multiword.sort(key=lambda e: (-len(e[0]), e[0]))
        return lx

    def kinds_of(self, word: str) -> frozenset[str]:
        """All token categories a bare word can take."""
        w = word.lower().replace("’", "'")
        kinds: set[str] = set()
        if w in DETERMINERS:
            kinds.add(DET)
        if w in PREPOSITIONS:
            kinds.add(PREP)
        if w in self.verbs:
            kinds.add(VERB)
        if w in self.adjectives or w in french.NUMERAL_WORDS:
            kinds.add(ADJ)
        if w in self.nouns:
            kinds.add(NOUN)
        return frozenset(kinds) if kinds else frozenset({WORD})

    def entity_id(self, name: str) -> str | None:
        return self.entities.get(name)

    def noun_readings(self, surface: str) -> list[tuple[str, str]]:
        return self.nouns.get(surface.lower(), [])

    def verb_readings(self, surface: str) -> list[VerbReading]:
        return self.verbs.get(surface.lower(), [])

    def hint_pool(self, kinds: frozenset[str] | None = None) -> list[str]:
        """Candidate surfaces for correction hints, optionally narrowed."""
        pool: list[str] = []
        if kinds is None or ENTITY in kinds:
            pool.extend(self.entities)
        if kinds is None or NOUN in kinds:
            pool.extend(self.nouns)
        if kinds is None or ADJ in kinds:
            pool.extend(self.adjectives)
        if kinds is None or VERB in kinds:
            pool.extend(self.verbs)
        if kinds is None or DET in kinds:
            pool.extend(DETERMINERS)
        if kinds is None or PREP in kinds:
            pool.extend(PREPOSITIONS)
        return pool


def suggest(word: str, pool: list[str], max_distance: int = 2, limit: int = 5) -> list[str]:
    """Nearest candidates by Damerau-Levenshtein distance (ties alphabetical)."""
    scored = []
    w = word.lower()
    for cand in set(pool):
        d = french.damerau_levenshtein(w, cand.lower())
        if d <= max_distance:
            scored.append((d, cand))
    scored.sort()
    return [c for _, c in scored[:limit]]
