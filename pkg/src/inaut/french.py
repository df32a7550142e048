"""French surface helpers: articles, elision, preposition contraction,
spelled-out numerals, accent folding, and the string metrics used for
correction hints and title matching."""

from __future__ import annotations

import unicodedata

DEFINITE = {("m", "sg"): "le", ("f", "sg"): "la", ("m", "pl"): "les", ("f", "pl"): "les"}
INDEFINITE = {("m", "sg"): "un", ("f", "sg"): "une", ("m", "pl"): "des", ("f", "pl"): "des"}
SUBJECT_PRONOUN = {("m", "sg"): "Il", ("f", "sg"): "Elle", ("m", "pl"): "Ils", ("f", "pl"): "Elles"}

# à + le -> au, de + le -> du, etc.
CONTRACTIONS = {
    ("à", "le"): "au",
    ("à", "les"): "aux",
    ("de", "le"): "du",
    ("de", "les"): "des",
}

# contracted preposition surface -> (preposition, implied article)
CONTRACTED_PREPS = {v: k for k, v in CONTRACTIONS.items()}

NUMERALS = {2: "deux", 3: "trois", 4: "quatre", 5: "cinq", 6: "six", 7: "sept",
            8: "huit", 9: "neuf", 10: "dix", 11: "onze", 12: "douze"}

NUMERAL_WORDS = {v: k for k, v in NUMERALS.items()}


def definite_article(gender: str, number: str, elision: bool) -> str:
    if elision and number == "sg":
        return "l'"
    return DEFINITE[(gender, number)]


def indefinite_article(gender: str, number: str) -> str:
    return INDEFINITE[(gender, number)]


def attach(article: str, name: str) -> str:
    """Join an article to a noun ("la baie", but "l'anse")."""
    if article.endswith("'"):
        return article + name
    return f"{article} {name}"


def prep_phrase(prep: str, article: str | None, name: str) -> str:
    """Build a prepositional surface with contraction ("à"+"le"+"NW" -> "au NW")."""
    if article is None:
        return f"{prep} {name}"
    contracted = CONTRACTIONS.get((prep, article))
    if contracted:
        return f"{contracted} {name}"
    return f"{prep} {attach(article, name)}"


def numeral(n: int) -> str:
    return NUMERALS.get(n, str(n))


def capitalize_first(text: str) -> str:
    """Uppercase the first letter, skipping nothing: bracketed entity names
    are never altered, so a leading bracket leaves the text unchanged."""
    if not text or text[0] == "[":
        return text
    return text[0].upper() + text[1:]


def fold(text: str) -> str:
    """Lowercased, accent-stripped form for fuzzy comparisons."""
    decomposed = unicodedata.normalize("NFD", text.lower())
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def name_similarity(a: str, b: str) -> float:
    """Normalized longest-common-substring ratio on folded names."""
    fa, fb = fold(a), fold(b)
    if not fa or not fb:
        return 0.0
    longest = 0
    prev = [0] * (len(fb) + 1)
    for i in range(1, len(fa) + 1):
        cur = [0] * (len(fb) + 1)
        for j in range(1, len(fb) + 1):
            if fa[i - 1] == fb[j - 1]:
                cur[j] = prev[j - 1] + 1
                longest = max(longest, cur[j])
        prev = cur
    return longest / max(len(fa), len(fb))


def damerau_levenshtein(a: str, b: str) -> int:
    """Edit distance with adjacent transpositions."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return la or lb
    prev2: list[int] = []
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                cur[j] = min(cur[j], prev2[j - 2] + 1)
        prev2, prev = prev, cur
    return prev[lb]
