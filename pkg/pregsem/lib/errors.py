from typing import Sequence


class TypeSyntaxError(ValueError):
    r"""A pregroup type string refers to an undeclared basic type or has a malformed adjoint suffix."""


class PosetError(ValueError):
    r"""The declared order on basic types is not a partial order."""


class LexiconError(ValueError):
    r"""A lexicon entry is malformed (e.g. its binding arity does not match its type)."""


class ParseError(ValueError):
    r"""A string cannot be parsed (e.g. it contains an unknown word or has no reduction)."""


class EvaluationError(ValueError):
    r"""A meaning cannot be evaluated in a model (e.g. a word is unbound or shapes do not match)."""


class ProjectorError(ValueError):
    r"""A matrix is not an orthogonal projector, or a request about projectors cannot be honored."""


class PartitionError(ValueError):
    r"""
    A family of predicates does not partition the entity space.

    Note: The offending entities are attached to the exception so that callers (e.g. the CLI) can report them.
    """

    def __init__(self, message: str, overlaps: Sequence[str] = (), gaps: Sequence[str] = ()):
        super().__init__(message)
        self.overlaps = tuple(overlaps)
        self.gaps = tuple(gaps)
