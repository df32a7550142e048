"""Recursive-descent parser for the controlled language.

The grammar is small: a sentence is a noun phrase, a verb, an optional
object noun phrase and any number of prepositional phrases. Noun phrases
may start with a spatial modifier and a determiner; noun groups accept
pre- and post-nominal adjectives. Lexical categories come from the
lexicon; when a word admits several categories the parser explores every
reading and reports genuine ambiguity rather than silently picking one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbiguityError, InautSyntaxError, UnknownLexeme
from .french import CONTRACTED_PREPS
from .lexicon import ADJ, DET, ENTITY, MODIF, NOUN, PREP, PUNCT, VERB, WORD, Lexicon, VerbReading, suggest
from .tokenizer import Token

_NP_START = frozenset({MODIF, DET, ENTITY, NOUN, ADJ})


@dataclass(frozen=True)
class NounGroup:
    head: Token
    pre_adjectives: tuple[Token, ...] = ()
    post_adjectives: tuple[Token, ...] = ()

    @property
    def is_entity(self) -> bool:
        return self.head.kind == ENTITY

    @property
    def head_name(self) -> str:
        return self.head.entity_name


@dataclass(frozen=True)
class NounPhrase:
    nn: NounGroup
    det: Token | None = None
    modifier: Token | None = None

    @property
    def span(self) -> tuple[int, int]:
        first = self.modifier or self.det or (self.nn.pre_adjectives or (self.nn.head,))[0]
        last = (self.nn.post_adjectives or (self.nn.head,))[-1]
        return first.start, last.end

    @property
    def det_surface(self) -> str | None:
        return self.det.lower if self.det else None


@dataclass(frozen=True)
class PrepPhrase:
    prep_token: Token
    prep: str  # normalized ("au" -> "à")
    implicit_det: str | None  # article folded into a contracted preposition
    np: NounPhrase


@dataclass(frozen=True)
class VerbUse:
    token: Token
    readings: tuple[VerbReading, ...]


@dataclass(frozen=True)
class InautSentence:
    subject: NounPhrase
    verb: VerbUse
    object: NounPhrase | None
    pps: tuple[PrepPhrase, ...]

    def noun_phrases(self) -> list[tuple[str, NounPhrase]]:
        """(position, NP) pairs; positions are subject/object/pp:<prep>."""
        out = [("subject", self.subject)]
        if self.object is not None:
            out.append(("object", self.object))
        out.extend((f"pp:{pp.prep}", pp.np) for pp in self.pps)
        return out


class _Failure:
    """Farthest-failure bookkeeping for error messages."""

    def __init__(self):
        self.pos = -1
        self.expected: set[str] = set()

    def note(self, pos: int, expected: str) -> None:
        if pos > self.pos:
            self.pos = pos
            self.expected = {expected}
        elif pos == self.pos:
            self.expected.add(expected)


def parse(tokens: list[Token], lexicon: Lexicon) -> InautSentence:
    """Parse one sentence; raises on syntax errors, unknown words and
    ambiguity (all parses attached to the error)."""
    if not tokens:
        raise InautSyntaxError("empty sentence", (0, 0), ["NP"])
    fail = _Failure()
    results: list[InautSentence] = []

    def at(pos: int) -> Token | None:
        return tokens[pos] if pos < len(tokens) else None

    def gen_nn(pos: int, pre: tuple[Token, ...]):
        tok = at(pos)
        if tok is None:
            fail.note(pos, NOUN)
            return
        if ENTITY in tok.kinds:
            yield from gen_post(pos + 1, pre, tok, ())
            return
        produced = False
        if NOUN in tok.kinds:
            produced = True
            yield from gen_post(pos + 1, pre, tok, ())
        if ADJ in tok.kinds:
            produced = True
            yield from gen_nn(pos + 1, pre + (tok,))
        if not produced:
            fail.note(pos, NOUN if not pre else ADJ)

    def gen_post(pos: int, pre, head: Token, post: tuple[Token, ...]):
        yield NounGroup(head, pre, post), pos
        tok = at(pos)
        if tok is not None and ADJ in tok.kinds and ENTITY not in tok.kinds:
            yield from gen_post(pos + 1, pre, head, post + (tok,))

    def gen_np(pos: int):
        modifier = None
        tok = at(pos)
        if tok is not None and MODIF in tok.kinds:
            modifier = tok
            pos += 1
        det = None
        tok = at(pos)
        if tok is not None and DET in tok.kinds:
            det = tok
            pos += 1
        for nn, p in gen_nn(pos, ()):
            yield NounPhrase(nn, det, modifier), p

    def gen_pp(pos: int):
        tok = at(pos)
        if tok is None or PREP not in tok.kinds:
            fail.note(pos, PREP)
            return
        prep, implicit = _normalize_prep(tok.lower)
        for np, p in gen_np(pos + 1):
            yield PrepPhrase(tok, prep, implicit, np), p

    def gen_pps(pos: int, acc: tuple[PrepPhrase, ...]):
        yield acc, pos
        tok = at(pos)
        if tok is not None and PREP in tok.kinds:
            for pp, p in gen_pp(pos):
                yield from gen_pps(p, acc + (pp,))

    def finish(pos: int) -> int | None:
        tok = at(pos)
        if tok is not None and tok.kind == PUNCT and tok.surface == ".":
            pos += 1
            tok = at(pos)
        if tok is None:
            return pos
        fail.note(pos, "end of sentence")
        return None

    def gen_sentence():
        for subj, p1 in gen_np(0):
            tok = at(p1)
            if tok is None or VERB not in tok.kinds:
                fail.note(p1, VERB)
                continue
            verb = VerbUse(tok, tuple(lexicon.verb_readings(tok.lower)))
            p2 = p1 + 1
            nxt = at(p2)
            object_options: list[tuple[NounPhrase | None, int]] = [(None, p2)]
            if nxt is not None and (nxt.kinds & _NP_START) and PREP not in nxt.kinds:
                object_options.extend(gen_np(p2))
            for obj, p3 in object_options:
                for pps, p4 in gen_pps(p3, ()):
                    if finish(p4) is not None:
                        yield InautSentence(subj, verb, obj, pps)

    for sentence in gen_sentence():
        if sentence not in results:
            results.append(sentence)
    if len(results) == 1:
        return results[0]
    if len(results) > 1:
        raise AmbiguityError(f"{len(results)} distinct parses", results)

    bad = tokens[fail.pos] if 0 <= fail.pos < len(tokens) else tokens[-1]
    span = bad.span if fail.pos < len(tokens) else (tokens[-1].end, tokens[-1].end)
    if bad.kind == WORD and fail.pos < len(tokens):
        hints = suggest(bad.surface, lexicon.hint_pool())
        raise UnknownLexeme(f"unknown word {bad.surface!r}", span, hints)
    expected = sorted(fail.expected)
    raise InautSyntaxError(
        f"unexpected {bad.surface!r}, expected one of: {', '.join(expected)}",
        span, expected)


def _normalize_prep(surface: str) -> tuple[str, str | None]:
    if surface in CONTRACTED_PREPS:
        prep, article = CONTRACTED_PREPS[surface]
        return prep, article
    if surface == "d'":
        return "de", None
    return surface, None
