"""Reiter default theories and their extensions.

Theories are handled extensionally. The Γ operator is computed as a least
fixed point over model sets: deductive closure is free in that
representation, so ``Γ(E)`` is identified with the set of worlds in which it
holds. Extensions are searched for among candidates ``Th(F ∪ {γ_d : d ∈ S})``
for every subset ``S`` of the defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import CapExceededError, TheoryError
from .logic import (
    IDENT_RE,
    Formula,
    Signature,
    WorldSet,
    conjuncts,
    formula_models,
    models_of,
    world_set_key,
)

DEFAULT_MAX_DEFAULTS = 12


class RuleKind(str, Enum):
    NORMAL = "normal"
    SEMI_NORMAL = "semi-normal"
    GENERAL = "general"


@dataclass(frozen=True)
class DefaultRule:
    """``prerequisite : M j1, ..., M jn / consequent``."""

    name: str
    prerequisite: Formula
    justifications: tuple[Formula, ...]
    consequent: Formula

    def __post_init__(self) -> None:
        if not IDENT_RE.fullmatch(self.name):
            raise TheoryError(f"invalid default name {self.name!r}")
        object.__setattr__(self, "justifications", tuple(self.justifications))

    @property
    def kind(self) -> RuleKind:
        if len(self.justifications) != 1:
            return RuleKind.GENERAL
        (just,) = self.justifications
        if just == self.consequent:
            return RuleKind.NORMAL
        if len(conjuncts(just)) > 1 and self.consequent in conjuncts(just):
            return RuleKind.SEMI_NORMAL
        return RuleKind.GENERAL

    @property
    def is_normal(self) -> bool:
        return self.kind is RuleKind.NORMAL

    def __str__(self) -> str:
        justs = ", ".join(f"M {j}" for j in self.justifications)
        return f"{self.name}: {self.prerequisite} : {justs} / {self.consequent}"


@dataclass(frozen=True)
class DefaultTheory:
    sig: Signature
    facts: tuple[Formula, ...]
    defaults: tuple[DefaultRule, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "facts", tuple(self.facts))
        object.__setattr__(self, "defaults", tuple(self.defaults))
        names = [d.name for d in self.defaults]
        if len(set(names)) != len(names):
            raise TheoryError(f"duplicate default names in {names}")
        for f in self.facts:
            self.sig.check(f)
        for d in self.defaults:
            for part in (d.prerequisite, *d.justifications, d.consequent):
                self.sig.check(part)

    def rule(self, name: str) -> DefaultRule:
        for d in self.defaults:
            if d.name == name:
                return d
        raise KeyError(name)

    @property
    def is_normal(self) -> bool:
        return all(d.is_normal for d in self.defaults)

    def fact_models(self) -> WorldSet:
        return models_of(self.facts, self.sig)


@dataclass(frozen=True)
class Extension:
    """An extension, kept as its generating defaults and its model set.

    The extension's sentences are exactly those true in every world of
    ``model_set``.
    """

    generating: tuple[str, ...]
    model_set: WorldSet = field(repr=False)

    @property
    def inconsistent(self) -> bool:
        return not self.model_set

    def key(self) -> tuple[int, ...]:
        return world_set_key(self.model_set)


def _justified(d: DefaultRule, e_models: WorldSet, sig: Signature) -> bool:
    # "¬β ∉ E" for every β: each justification holds somewhere in E
    return all(e_models & formula_models(b, sig) for b in d.justifications)


def gamma_fixpoint(theory: DefaultTheory, e_models: WorldSet) -> WorldSet:
    """Model set of ``Γ(E)`` for the theory whose model set is ``e_models``."""
    return _gamma(theory, e_models)[0]


def gamma_trace(theory: DefaultTheory, e_models: WorldSet) -> list[tuple[Optional[str], WorldSet]]:
    """Every step of the fixed-point computation as ``(rule fired, model set)``.

    The first entry is ``(None, models of F)``; the last model set is Γ(E).
    """
    sig = theory.sig
    current = theory.fact_models()
    trace: list[tuple[Optional[str], WorldSet]] = [(None, current)]
    pending = [d for d in theory.defaults if _justified(d, e_models, sig)]
    fired: set[str] = set()
    changed = True
    while changed:
        changed = False
        for d in pending:
            if d.name in fired:
                continue
            if current <= formula_models(d.prerequisite, sig):
                fired.add(d.name)
                current = current & formula_models(d.consequent, sig)
                trace.append((d.name, current))
                changed = True
    return trace


def _gamma(theory: DefaultTheory, e_models: WorldSet) -> tuple[WorldSet, frozenset[str]]:
    trace = gamma_trace(theory, e_models)
    return trace[-1][1], frozenset(name for name, _ in trace[1:])


def is_extension(theory: DefaultTheory, candidate: WorldSet) -> bool:
    return gamma_fixpoint(theory, candidate) == candidate


def candidate_models(theory: DefaultTheory, names: Iterable[str]) -> WorldSet:
    names = set(names)
    return models_of(
        [*theory.facts, *(d.consequent for d in theory.defaults if d.name in names)],
        theory.sig,
    )


def enumerate_extensions(
    theory: DefaultTheory, max_defaults: int = DEFAULT_MAX_DEFAULTS
) -> list[Extension]:
    """All extensions, sorted by their canonical model-set encoding."""
    n = len(theory.defaults)
    if n > max_defaults:
        raise CapExceededError(f"{n} defaults exceeds the cap of {max_defaults}")
    names = [d.name for d in theory.defaults]
    found: dict[tuple[int, ...], Extension] = {}
    for size in range(n + 1):
        for subset in combinations(names, size):
            cand = candidate_models(theory, subset)
            key = world_set_key(cand)
            if key in found:
                continue
            gamma, fired = _gamma(theory, cand)
            if gamma == cand:
                found[key] = Extension(tuple(sorted(fired)), cand)
    return [found[k] for k in sorted(found)]


def generating_orderings(theory: DefaultTheory, ext: Extension) -> list[tuple[str, ...]]:
    """Orderings of the generating defaults in which every prerequisite is
    entailed by the facts plus the consequents applied before it.

    Results are lexicographic by rule name.
    """
    sig = theory.sig
    rules = sorted((theory.rule(n) for n in ext.generating), key=lambda d: d.name)
    out: list[tuple[str, ...]] = []

    def extend(prefix: list[str], context: WorldSet, remaining: list[DefaultRule]) -> None:
        if not remaining:
            out.append(tuple(prefix))
            return
        for i, d in enumerate(remaining):
            if context <= formula_models(d.prerequisite, sig):
                prefix.append(d.name)
                extend(
                    prefix,
                    context & formula_models(d.consequent, sig),
                    remaining[:i] + remaining[i + 1 :],
                )
                prefix.pop()

    extend([], theory.fact_models(), rules)
    return out


def replay(theory: DefaultTheory, order: Sequence[str]) -> WorldSet:
    """Model set after applying the consequents of ``order`` to the facts."""
    return candidate_models(theory, order)


def normal_default(name: str, prerequisite: Formula, consequent: Formula) -> DefaultRule:
    return DefaultRule(name, prerequisite, (consequent,), consequent)
