"""Line-oriented theory and weight files.

Theory file::

    # comment
    prop a, a', b
    fact a
    default d1: a :: b / b
    threshold !b

Weight file::

    default_weight 1
    weight a=1 a'=1 b=0 : 99

``prop`` lines are optional; without them the signature is the atoms in
order of first appearance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .defaults import DefaultRule, DefaultTheory
from .errors import ParseError, SignatureError, WeightError
from .logic import (
    DEFAULT_MAX_PROPS,
    IDENT_RE,
    KEYWORDS,
    TOP,
    Formula,
    Signature,
    infer_signature,
    parse_formula,
)
from .threshold import ThresholdCollection
from .weights import WorldModel, build_model, to_rational

PathLike = Union[str, Path]

_DEFAULT_RE = re.compile(
    r"\s*(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)\s*:(?!:)(?P<pre>[^:]*)::(?P<justs>[^/]*)/(?P<cons>.*)$"
)


@dataclass(frozen=True)
class TheoryFile:
    sig: Signature
    facts: tuple[Formula, ...]
    defaults: tuple[DefaultRule, ...]
    thresholds: tuple[Formula, ...]

    @property
    def theory(self) -> DefaultTheory:
        return DefaultTheory(self.sig, self.facts, self.defaults)

    @property
    def collection(self) -> ThresholdCollection:
        return ThresholdCollection(self.sig, self.thresholds, self.facts)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


class _LineParser:
    def __init__(self, source: Optional[str], sig: Optional[Signature]):
        self.source = source
        self.sig = sig

    def formula(self, text: str, lineno: int, offset: int, allow_empty: bool = False) -> Formula:
        if allow_empty and not text.strip():
            return TOP
        try:
            return parse_formula(text, self.sig)
        except ParseError as exc:
            raise type(exc)(exc.message, lineno, offset + exc.col, self.source) from None

    def error(self, message: str, lineno: int, col: int = 1) -> ParseError:
        return ParseError(message, lineno, col, self.source)


def parse_theory(
    text: str, source: Optional[str] = None, max_props: int = DEFAULT_MAX_PROPS
) -> TheoryFile:
    lines = text.splitlines()
    declared: list[str] = []
    for lineno, raw in enumerate(lines, 1):
        line = _strip_comment(raw)
        m = re.match(r"\s*prop\b", line)
        if m:
            for name in line[m.end() :].split(","):
                name = name.strip()
                if not name:
                    continue
                if not IDENT_RE.fullmatch(name) or name in KEYWORDS:
                    raise ParseError(f"invalid proposition name {name!r}", lineno, 1, source)
                if name in declared:
                    raise ParseError(f"proposition {name!r} declared twice", lineno, 1, source)
                declared.append(name)

    fixed = Signature(tuple(declared), max_props=max_props) if declared else None
    p = _LineParser(source, fixed)
    facts: list[Formula] = []
    defaults: list[DefaultRule] = []
    thresholds: list[Formula] = []
    names: set[str] = set()
    in_file_order: list[Formula] = []

    for lineno, raw in enumerate(lines, 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = re.match(r"\s*([A-Za-z_]+)\b", line)
        if not m:
            raise p.error("expected a keyword", lineno)
        keyword, rest_at = m.group(1), m.end()
        rest = line[rest_at:]
        if keyword == "prop":
            continue
        if keyword == "fact":
            facts.append(p.formula(rest, lineno, rest_at))
            in_file_order.append(facts[-1])
        elif keyword == "threshold":
            phi = p.formula(rest, lineno, rest_at)
            if phi in thresholds:
                raise p.error(f"duplicate threshold formula {phi}", lineno, rest_at + 1)
            thresholds.append(phi)
            in_file_order.append(phi)
        elif keyword == "default":
            d = _DEFAULT_RE.match(rest)
            if not d:
                raise p.error(
                    "expected 'default NAME: PREREQ :: JUST, ... / CONSEQUENT'", lineno, rest_at + 1
                )
            name = d.group("name")
            if name in names:
                raise p.error(f"duplicate default name {name!r}", lineno, rest_at + d.start("name") + 1)
            names.add(name)
            pre = p.formula(d.group("pre"), lineno, rest_at + d.start("pre"), allow_empty=True)
            justs = []
            jtext, jstart = d.group("justs"), rest_at + d.start("justs")
            if jtext.strip():
                pos = 0
                for part in jtext.split(","):
                    justs.append(p.formula(part, lineno, jstart + pos))
                    pos += len(part) + 1
            cons = p.formula(d.group("cons"), lineno, rest_at + d.start("cons"))
            defaults.append(DefaultRule(name, pre, tuple(justs), cons))
            in_file_order += [pre, *justs, cons]
        else:
            raise p.error(f"unknown keyword {keyword!r}", lineno, m.start(1) + 1)

    sig = fixed if fixed is not None else infer_signature(in_file_order, max_props=max_props)
    return TheoryFile(sig, tuple(facts), tuple(defaults), tuple(thresholds))


def load_theory(path: PathLike, max_props: int = DEFAULT_MAX_PROPS) -> TheoryFile:
    path = Path(path)
    return parse_theory(path.read_text(encoding="utf-8"), str(path), max_props)


def parse_weights(text: str, sig: Signature, source: Optional[str] = None) -> WorldModel:
    default_weight = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "default_weight":
            if default_weight is not None:
                raise ParseError("default_weight given twice", lineno, 1, source)
            default_weight = _rational(rest, lineno, source)
        elif keyword == "weight":
            lhs, sep, rhs = rest.rpartition(":")
            if not sep:
                raise ParseError("expected 'weight p=0|1 ... : RATIONAL'", lineno, 1, source)
            assignment = {}
            for item in lhs.split():
                name, eq, val = item.partition("=")
                if not eq or val not in ("0", "1"):
                    raise ParseError(f"bad assignment {item!r}", lineno, 1, source)
                if name not in sig:
                    raise ParseError(f"unknown proposition {name!r}", lineno, 1, source)
                if name in assignment:
                    raise ParseError(f"{name!r} assigned twice", lineno, 1, source)
                assignment[name] = val == "1"
            if len(assignment) != len(sig):
                missing = [q for q in sig if q not in assignment]
                raise ParseError(f"incomplete assignment, missing {missing}", lineno, 1, source)
            entries.append((assignment, _rational(rhs, lineno, source)))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, 1, source)
    try:
        return build_model(sig, entries, 1 if default_weight is None else default_weight)
    except SignatureError as exc:
        raise WeightError(str(exc)) from None


def _rational(text: str, lineno: int, source: Optional[str]):
    try:
        return to_rational(text)
    except ValueError:
        raise ParseError(f"not a rational number: {text.strip()!r}", lineno, 1, source) from None


def load_weights(path: PathLike, sig: Signature) -> WorldModel:
    path = Path(path)
    return parse_weights(path.read_text(encoding="utf-8"), sig, str(path))
