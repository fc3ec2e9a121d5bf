"""Propositional language over a finite signature.

Formulas are immutable trees. Worlds are total truth assignments identified by
a canonical integer: bit ``k`` of a world id is the truth value of the
``k``-th proposition of the signature. Sets of worlds are plain
``frozenset[int]`` values, which makes them hashable, comparable and cheap to
intersect.

Entailment is decided by exhaustive model enumeration; a theory is never
materialised as a sentence set, only as the set of worlds satisfying it.

Text grammar, loosest binding first::

    iff     := imp ( '<->' iff )?          right-associative
    imp     := or ( '->' imp )?            right-associative
    or      := and ( '|' and )*            left-associative
    and     := unary ( '&' unary )*        left-associative
    unary   := '!' unary | primary
    primary := IDENT | 'true' | 'false' | '(' iff ')'

Identifiers are letters, digits and underscores (not starting with a digit),
optionally followed by apostrophes, so ``a'`` is a legal proposition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .errors import CapExceededError, ParseError, SignatureError, UnknownAtomError

DEFAULT_MAX_PROPS = 20

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")
KEYWORDS = frozenset({"true", "false"})

WorldSet = frozenset  # frozenset[int] of world ids


# ---------------------------------------------------------------------------
# Formula AST
# ---------------------------------------------------------------------------

# Binding strength used by the pretty-printer; larger binds tighter.
_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = range(1, 7)


class Formula:
    """Base class of the formula AST."""

    __slots__ = ()
    prec = _PREC_ATOM

    def atoms(self) -> tuple[str, ...]:
        """Atom names in order of first (left-to-right) occurrence."""
        seen: dict[str, None] = {}
        _collect_atoms(self, seen)
        return tuple(seen)

    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self) -> str:
        return "Bottom()"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula
    prec = _PREC_NOT


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula
    prec = _PREC_AND


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula
    prec = _PREC_OR


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula
    prec = _PREC_IMP


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula
    prec = _PREC_IFF


TOP = Top()
BOTTOM = Bottom()


def _collect_atoms(f: Formula, seen: dict[str, None]) -> None:
    if isinstance(f, Atom):
        seen.setdefault(f.name)
    elif isinstance(f, Not):
        _collect_atoms(f.arg, seen)
    elif isinstance(f, (And, Or, Implies, Iff)):
        _collect_atoms(f.left, seen)
        _collect_atoms(f.right, seen)


def conjuncts(f: Formula) -> list[Formula]:
    """Flatten nested conjunctions into their top-level conjuncts."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def conjoin(fs: Iterable[Formula]) -> Formula:
    out: Formula | None = None
    for f in fs:
        out = f if out is None else And(out, f)
    return TOP if out is None else out


# ---------------------------------------------------------------------------
# Pretty-printing (minimal parentheses, same grammar as the parser)
# ---------------------------------------------------------------------------

_BINOP = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def pretty(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        inner = pretty(f.arg)
        return "!" + (f"({inner})" if f.arg.prec < _PREC_NOT else inner)
    op = _BINOP[type(f)]
    p = f.prec
    left, right = pretty(f.left), pretty(f.right)
    if isinstance(f, (And, Or)):
        # left-associative: a same-level right operand needs parentheses
        lparen, rparen = f.left.prec < p, f.right.prec <= p
    else:
        # right-associative: a same-level left operand needs parentheses
        lparen, rparen = f.left.prec <= p, f.right.prec < p
    if lparen:
        left = f"({left})"
    if rparen:
        right = f"({right})"
    return f"{left} {op} {right}"


# ---------------------------------------------------------------------------
# Tokenizer and recursive-descent parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<iff><->)"
    r"|(?P<imp>->)"
    r"|(?P<op>[!&|()])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident', '<->', '->', '!', '&', '|', '(', ')', 'eof'
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ws":
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rindex("\n") + 1
        elif kind == "ident":
            tokens.append(_Token("ident", chunk, line, col))
        else:
            tokens.append(_Token(chunk, chunk, line, col))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {_describe(tok)}", tok.line, tok.col)
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.col)
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.peek().kind == "<->":
            self.take()
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "->":
            self.take()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek().kind == "!":
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.take()
        if tok.kind == "(":
            f = self.iff()
            self.expect(")")
            return f
        if tok.kind == "ident":
            if tok.text == "true":
                return TOP
            if tok.text == "false":
                return BOTTOM
            if self.sig is not None and tok.text not in self.sig:
                raise UnknownAtomError(f"unknown atom {tok.text!r}", tok.line, tok.col)
            return Atom(tok.text)
        raise ParseError(f"expected a formula, found {_describe(tok)}", tok.line, tok.col)


def _describe(tok: _Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


def parse_formula(text: str, sig: Signature | None = None) -> Formula:
    """Parse ``text`` into a formula.

    With a fixed ``sig`` every atom must belong to it. Without one the
    signature is inferred by the caller from :meth:`Formula.atoms`.
    """
    return _Parser(text, sig).parse()


# ---------------------------------------------------------------------------
# Signatures and worlds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Ordered, duplicate-free list of proposition names."""

    props: tuple[str, ...]
    max_props: int = field(default=DEFAULT_MAX_PROPS, compare=False)

    def __post_init__(self) -> None:
        props = tuple(self.props)
        object.__setattr__(self, "props", props)
        for p in props:
            if not IDENT_RE.fullmatch(p) or p in KEYWORDS:
                raise SignatureError(f"invalid proposition name {p!r}")
        if len(set(props)) != len(props):
            raise SignatureError(f"duplicate proposition names in {list(props)}")
        if len(props) > self.max_props:
            raise CapExceededError(
                f"signature has {len(props)} propositions, cap is {self.max_props}"
            )
        object.__setattr__(self, "_index", {p: k for k, p in enumerate(props)})

    def __len__(self) -> int:
        return len(self.props)

    def __iter__(self) -> Iterator[str]:
        return iter(self.props)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SignatureError(f"atom {name!r} not in signature {list(self.props)}") from None

    @property
    def world_count(self) -> int:
        return 1 << len(self.props)

    def all_worlds(self) -> WorldSet:
        return _universe(self.world_count)

    def world(self, wid: int) -> World:
        if not 0 <= wid < self.world_count:
            raise SignatureError(f"world id {wid} out of range for {len(self)} propositions")
        return World(self, wid)

    def world_id(self, assignment: Mapping[str, bool]) -> int:
        """Canonical id of a total assignment; extra or missing names are errors."""
        missing = [p for p in self.props if p not in assignment]
        extra = [p for p in assignment if p not in self]
        if missing or extra:
            raise SignatureError(f"assignment must cover exactly {list(self.props)}")
        return sum(1 << k for k, p in enumerate(self.props) if assignment[p])

    def check(self, f: Formula) -> None:
        for a in f.atoms():
            if a not in self:
                raise SignatureError(f"atom {a!r} not in signature {list(self.props)}")


@dataclass(frozen=True)
class World:
    sig: Signature
    id: int

    @property
    def assignment(self) -> dict[str, bool]:
        return {p: bool(self.id >> k & 1) for k, p in enumerate(self.sig.props)}

    def __str__(self) -> str:
        return format_world(self.sig, self.id)


def format_world(sig: Signature, wid: int) -> str:
    """Render a world as ``{a, a', !b}``."""
    lits = [p if wid >> k & 1 else f"!{p}" for k, p in enumerate(sig.props)]
    return "{" + ", ".join(lits) + "}"


@lru_cache(maxsize=64)
def _universe(n: int) -> WorldSet:
    return frozenset(range(n))


@lru_cache(maxsize=1024)
def _atom_models(nprops: int, k: int) -> WorldSet:
    return frozenset(w for w in range(1 << nprops) if w >> k & 1)


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------


def evaluate(f: Formula, w: Union[World, Mapping[str, bool]]) -> bool:
    """Classical truth value of ``f`` in a world (or a plain assignment mapping)."""
    assignment = w.assignment if isinstance(w, World) else w
    return _eval(f, assignment)


def _eval(f: Formula, v: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return v[f.name]
        except KeyError:
            raise SignatureError(f"atom {f.name!r} has no truth value") from None
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _eval(f.arg, v)
    if isinstance(f, And):
        return _eval(f.left, v) and _eval(f.right, v)
    if isinstance(f, Or):
        return _eval(f.left, v) or _eval(f.right, v)
    if isinstance(f, Implies):
        return (not _eval(f.left, v)) or _eval(f.right, v)
    if isinstance(f, Iff):
        return _eval(f.left, v) == _eval(f.right, v)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=8192)
def formula_models(f: Formula, sig: Signature) -> WorldSet:
    """Worlds of ``sig`` in which ``f`` is true."""
    n = len(sig)
    if isinstance(f, Atom):
        return _atom_models(n, sig.index(f.name))
    universe = _universe(1 << n)
    if isinstance(f, Top):
        return universe
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, Not):
        return universe - formula_models(f.arg, sig)
    left = formula_models(f.left, sig)
    right = formula_models(f.right, sig)
    if isinstance(f, And):
        return left & right
    if isinstance(f, Or):
        return left | right
    if isinstance(f, Implies):
        return (universe - left) | right
    if isinstance(f, Iff):
        return universe - (left ^ right)
    raise TypeError(f"not a formula: {f!r}")


def models_of(fs: Iterable[Formula], sig: Signature) -> WorldSet:
    """Worlds satisfying every formula in ``fs``; all worlds when ``fs`` is empty."""
    out = sig.all_worlds()
    for f in fs:
        out = out & formula_models(f, sig)
    return out


def entails(premises: Iterable[Formula], f: Formula, sig: Signature) -> bool:
    return models_of(premises, sig) <= formula_models(f, sig)


def world_set_key(ws: Iterable[int]) -> tuple[int, ...]:
    """Canonical, totally ordered encoding of a world set."""
    return tuple(sorted(ws))


def infer_signature(formulas: Iterable[Formula], max_props: int = DEFAULT_MAX_PROPS) -> Signature:
    seen: dict[str, None] = {}
    for f in formulas:
        _collect_atoms(f, seen)
    return Signature(tuple(seen), max_props=max_props)
