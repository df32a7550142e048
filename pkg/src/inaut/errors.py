"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class InautError(Exception):
    """Base class for all toolkit errors."""


# --- geometry ---

class DegeneratePolygon(InautError):
    """Polygon has fewer than 3 vertices, repeated consecutive vertices,
    self-intersections, or zero area."""


class UnknownModifier(InautError):
    """Spatial modifier name is not in the configured closed list."""


class NoGeoreferencedNodes(InautError):
    """Document tree has no georeferenced node at levels 1-3."""


# --- knowledge base ---

class UnknownSchema(InautError):
    pass


class UnknownInstance(InautError):
    pass


class UnknownEntity(InautError):
    pass


class SignatureMismatch(InautError):
    """Relation instance does not conform to its schema signature."""


class ParseError(InautError):
    """Persistent-file parse failure; carries line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaVersionMismatch(InautError):
    pass


# --- document model ---

class InvariantViolation(InautError):
    """Document tree violates a structural invariant (cycle, level gap, ...)."""


class NoGeoArea(InautError):
    """Leaf has no geographic area on itself or any ancestor."""


# --- grammar ---

class UnbalancedBracket(InautError):
    def __init__(self, message: str, span: tuple[int, int]):
        super().__init__(message)
        self.span = span


class InautSyntaxError(InautError):
    """Sentence does not conform to the grammar; carries the failing span
    and the token categories that would have been accepted."""

    def __init__(self, message: str, span: tuple[int, int], expected: list[str] | None = None):
        super().__init__(message)
        self.span = span
        self.expected = expected or []


class UnknownLexeme(InautError):
    def __init__(self, message: str, span: tuple[int, int], hints: list[str] | None = None):
        super().__init__(message)
        self.span = span
        self.hints = hints or []


class AmbiguityError(InautError):
    """More than one parse tree; carries all of them."""

    def __init__(self, message: str, parses: list):
        super().__init__(message)
        self.parses = parses


class RoleMismatch(InautError):
    """A prepositional phrase matches no member or attribute role."""


class UnresolvedEntity(InautError):
    pass


# --- generation ---

class EmptyComponent(InautError):
    pass


class MissingLexicalization(InautError):
    pass
