"""Exception hierarchy shared by every engine.

The CLI maps these onto its exit codes: :class:`ParseError` is a usage/parse
failure (exit 1); everything else deriving from :class:`NmrError` is a
semantic failure (exit 2).
"""

from __future__ import annotations


class NmrError(Exception):
    """Base class for all reasoning-kernel errors."""


class ParseError(NmrError):
    """Malformed formula or input file.

    ``line`` and ``col`` are 1-based and point at the offending character.
    """

    def __init__(self, message: str, line: int = 1, col: int = 1, source: str | None = None):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


class UnknownAtomError(ParseError):
    """An atom outside a fixed signature."""


class SignatureError(NmrError):
    """Bad proposition names, or a formula mentioning atoms the signature lacks."""


class CapExceededError(NmrError):
    """A configurable size cap (propositions, defaults, rules) was exceeded."""


class ZeroMassError(NmrError):
    """Conditioning on a set of worlds whose total weight is zero."""


class WeightError(NmrError):
    """Invalid weight assignment: negative, duplicated, or all-zero."""


class TheoryError(NmrError):
    """Structurally invalid default theory or threshold collection."""


class NonNormalError(NmrError):
    """An operation that is only defined for normal default theories got another kind."""


class UnrankableError(NmrError):
    """Every grounded ordering of an extension hit a zero-mass conditioning set."""
