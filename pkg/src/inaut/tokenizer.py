"""Tokenizer for the controlled language: bracketed spans become single
ENTITY tokens, French elision ("l'", "d'") splits into a determiner plus
the following word, multiword verb forms and spatial modifiers are matched
greedily against the lexicon."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnbalancedBracket
from .lexicon import (
    ADJ,
    DET,
    ENTITY,
    MODIF,
    NOUN,
    PREP,
    PUNCT,
    VERB,
    WORD,
    Lexicon,
)
from .geometry import MODIFIER_NAMES

_PUNCT_CHARS = ".,;:"
_ELISION_PREFIXES = ("l'", "d'", "l’", "d’")


@dataclass(frozen=True)
class Token:
    kind: str
    surface: str
    start: int
    end: int
    kinds: frozenset[str] = field(default_factory=frozenset)

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end

    @property
    def entity_name(self) -> str:
        """Bracketed name without the brackets."""
        return self.surface[1:-1] if self.kind == ENTITY else self.surface

    @property
    def lower(self) -> str:
        return self.surface.lower().replace("’", "'")


def tokenize(text: str, lexicon: Lexicon | None = None) -> list[Token]:
    tokens: list[Token] = []
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "[":
            close = text.find("]", i)
            if close == -1:
                raise UnbalancedBracket("missing closing bracket", (i, n))
            tokens.append(Token(ENTITY, text[i:close + 1], i, close + 1, frozenset({ENTITY})))
            i = close + 1
            continue
        if ch == "]":
            raise UnbalancedBracket("closing bracket without opening", (i, i + 1))
        if ch in _PUNCT_CHARS:
            tokens.append(Token(PUNCT, ch, i, i + 1, frozenset({PUNCT})))
            i += 1
            continue

        matched = _match_multiword(text, i, lexicon)
        if matched is not None:
            length, kind = matched
            tokens.append(Token(kind, text[i:i + length], i, i + length, frozenset({kind})))
            i += length
            continue

        end = _word_end(text, i)
        word = text[i:end]
        low = word.lower().replace("’", "'")
        for prefix, kind in (("l'", DET), ("d'", PREP)):
            if low.startswith(prefix) and len(low) > 2:
                tokens.append(Token(kind, text[i:i + 2], i, i + 2, frozenset({kind})))
                i += 2
                word, low = text[i:end], low[2:]
                break
        if not word:
            continue
        kinds = lexicon.kinds_of(low) if lexicon else _closed_kinds(low)
        primary = _primary_kind(kinds)
        tokens.append(Token(primary, word, i, end, kinds))
        i = end
    return tokens


def _word_end(text: str, start: int) -> int:
    i = start
    while i < len(text):
        ch = text[i]
        if ch.isspace() or ch in _PUNCT_CHARS or ch in "[]":
            break
        i += 1
    return i


def _match_multiword(text: str, i: int, lexicon: Lexicon | None) -> tuple[int, str] | None:
    table = lexicon.multiword if lexicon else [(m.lower(), MODIF) for m in MODIFIER_NAMES]
    low = text.lower().replace("’", "'")
    for surface, kind in table:
        if " " not in surface:
            continue
        end = i + len(surface)
        if low[i:end] == surface and (end >= len(text) or not low[end].isalnum()):
            return len(surface), kind
    return None


def _closed_kinds(low: str) -> frozenset[str]:
    from .lexicon import DETERMINERS, PREPOSITIONS

    kinds: set[str] = set()
    if low in DETERMINERS:
        kinds.add(DET)
    if low in PREPOSITIONS:
        kinds.add(PREP)
    return frozenset(kinds) if kinds else frozenset({WORD})


_PRIORITY = (ENTITY, MODIF, DET, PREP, VERB, ADJ, NOUN, PUNCT, WORD)


def _primary_kind(kinds: frozenset[str]) -> str:
    for k in _PRIORITY:
        if k in kinds:
            return k
    return WORD


def detokenize(source: str, tokens: list[Token]) -> str:
    """Rebuild the input from token spans; the gaps between spans must be
    pure whitespace, so the result is byte-identical to the source."""
    out: list[str] = []
    cursor = 0
    for tok in tokens:
        gap = source[cursor:tok.start]
        if gap.strip():
            raise ValueError(f"tokens do not tile the input at offset {cursor}")
        out.append(gap)
        out.append(tok.surface)
        cursor = tok.end
    out.append(source[cursor:])
    return "".join(out)


def split_segments(text: str) -> list[tuple[str, int]]:
    """Split into sentence segments on period + whitespace; periods inside
    brackets are literal. Returns (segment, byte offset) pairs."""
    segments: list[tuple[str, int]] = []
    start = 0
    depth = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth = max(0, depth - 1)
        elif ch == "." and depth == 0 and (i + 1 >= n or text[i + 1].isspace()):
            seg = text[start:i + 1].strip()
            if seg:
                segments.append((seg, start + _lead_ws(text, start)))
            start = i + 1
        i += 1
    tail = text[start:].strip()
    if tail:
        segments.append((tail, start + _lead_ws(text, start)))
    return segments


def _lead_ws(text: str, start: int) -> int:
    k = 0
    while start + k < len(text) and text[start + k].isspace():
        k += 1
    return k
