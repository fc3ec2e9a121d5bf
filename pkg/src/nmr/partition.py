"""Possible-world partition sequences.

A run starts from the worlds where the background facts hold, then
repeatedly applies a rule whose condition holds in the current context,
splitting off the worlds that falsify the rule's conclusion as a new class.
The context left when no rule applies any more is the last class.

Rules whose condition holds but whose conclusion the context already
entails are recorded as (vacuous) steps without emitting an empty class.
Each rule is applied at most once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .defaults import DEFAULT_MAX_DEFAULTS, DefaultTheory
from .errors import CapExceededError, NonNormalError
from .logic import Formula, Signature, WorldSet, formula_models, models_of
from .threshold import ThresholdCollection, ThresholdParams
from .weights import WorldModel, mass

DEFAULT_MAX_RULES = DEFAULT_MAX_DEFAULTS


@dataclass(frozen=True)
class NmRule:
    """A nonmonotonic rule ``<cond; res>``.

    ``cond`` is a predicate over the current context. ``measure``, when
    present, reports the quantity the condition tests (for the trace).
    """

    name: str
    res: Formula
    cond: Callable[[WorldSet], bool] = field(compare=False, repr=False)
    label: str = field(default="", compare=False)
    measure: Optional[Callable[[WorldSet], Fraction]] = field(
        default=None, compare=False, repr=False
    )


@dataclass(frozen=True)
class Step:
    rule: str
    res: Formula
    vacuous: bool
    value: Optional[Fraction] = None


@dataclass(frozen=True)
class PartitionSequence:
    classes: tuple[WorldSet, ...]
    steps: tuple[Step, ...]

    @property
    def applied(self) -> tuple[str, ...]:
        """Rule names that produced the inner classes ``W_1 .. W_{l-1}``."""
        return tuple(s.rule for s in self.steps if not s.vacuous)

    @property
    def accepted(self) -> tuple[Formula, ...]:
        """Conclusions of every application, vacuous ones included, in order."""
        return tuple(s.res for s in self.steps)

    @property
    def last(self) -> WorldSet:
        return self.classes[-1]


def final_theory(ps: PartitionSequence) -> WorldSet:
    return ps.last


def default_rules_of(theory: DefaultTheory) -> list[NmRule]:
    """``<□α ∧ ◇γ; γ>`` for every normal default ``α : Mγ / γ``."""
    bad = [d.name for d in theory.defaults if not d.is_normal]
    if bad:
        raise NonNormalError(
            "partition sequences are only defined for normal defaults; "
            f"not normal: {', '.join(bad)}"
        )
    sig = theory.sig
    rules = []
    for d in theory.defaults:
        alpha = formula_models(d.prerequisite, sig)
        gamma = formula_models(d.consequent, sig)

        def cond(ctx: WorldSet, alpha: WorldSet = alpha, gamma: WorldSet = gamma) -> bool:
            return ctx <= alpha and bool(ctx & gamma)

        label = f"[]({d.prerequisite}) & <>({d.consequent})"
        rules.append(NmRule(d.name, d.consequent, cond, label))
    return rules


def threshold_rules_of(
    coll: ThresholdCollection, m: WorldModel, params: ThresholdParams
) -> list[NmRule]:
    """``<%(φ) >= 1 - ε; φ>`` for every φ in the threshold set.

    Rule names are the printed formulas. A zero-mass context fails the
    condition instead of raising.
    """
    bar = params.threshold
    rules = []
    for phi in coll.thresholds:
        models = formula_models(phi, coll.sig)

        def measure(ctx: WorldSet, models: WorldSet = models) -> Fraction:
            return mass(m, ctx & models) / mass(m, ctx)

        def cond(ctx: WorldSet, measure=measure) -> bool:
            return mass(m, ctx) > 0 and measure(ctx) >= bar

        rules.append(NmRule(str(phi), phi, cond, f"%({phi}) >= {bar}", measure))
    return rules


def _applicable(rules: Sequence[NmRule], applied: set[str], context: WorldSet) -> list[NmRule]:
    return [r for r in rules if r.name not in applied and r.cond(context)]


def _apply(rule: NmRule, context: WorldSet, sig: Signature) -> tuple[WorldSet, WorldSet, Step]:
    value = rule.measure(context) if rule.measure is not None else None
    keep = context & formula_models(rule.res, sig)
    dropped = context - keep
    return keep, dropped, Step(rule.name, rule.res, not dropped, value)


def _start(sig: Signature, background: Sequence[Formula]) -> tuple[WorldSet, WorldSet]:
    context = models_of(background, sig)
    return sig.all_worlds() - context, context


def run_partition(
    sig: Signature,
    background: Sequence[Formula],
    rules: Sequence[NmRule],
    strategy: Optional[Sequence[str]] = None,
) -> PartitionSequence:
    """One partition sequence, picking the strategy-least applicable rule each step.

    ``strategy`` is a total order on rule names; it defaults to the order of
    ``rules``.
    """
    names = [r.name for r in rules]
    if strategy is None:
        strategy = names
    if sorted(strategy) != sorted(names) or len(set(names)) != len(names):
        raise ValueError("strategy must order every rule name exactly once")
    rank = {name: i for i, name in enumerate(strategy)}
    ordered = sorted(rules, key=lambda r: rank[r.name])

    w0, context = _start(sig, background)
    classes = [w0]
    steps = []
    applied: set[str] = set()
    while True:
        options = _applicable(ordered, applied, context)
        if not options:
            break
        rule = options[0]
        context, dropped, step = _apply(rule, context, sig)
        applied.add(rule.name)
        steps.append(step)
        if not step.vacuous:
            classes.append(dropped)
    classes.append(context)
    return PartitionSequence(tuple(classes), tuple(steps))


def enumerate_partition_sequences(
    sig: Signature,
    background: Sequence[Formula],
    rules: Sequence[NmRule],
    max_rules: int = DEFAULT_MAX_RULES,
) -> list[PartitionSequence]:
    """Every sequence reachable under some rule-choice order.

    Branching on every applicable rule at every step reaches exactly the runs
    of :func:`run_partition` over all strategies. Results are deduplicated
    and sorted by class contents, then by step names.
    """
    if len(rules) > max_rules:
        raise CapExceededError(f"{len(rules)} rules exceeds the cap of {max_rules}")
    w0, start = _start(sig, background)
    seen: dict[tuple, PartitionSequence] = {}

    def search(context: WorldSet, classes: list[WorldSet], steps: list[Step], applied: set[str]):
        options = _applicable(rules, applied, context)
        if not options:
            ps = PartitionSequence(tuple(classes) + (context,), tuple(steps))
            seen.setdefault(_sort_key(ps), ps)
            return
        for rule in options:
            keep, dropped, step = _apply(rule, context, sig)
            applied.add(rule.name)
            steps.append(step)
            if not step.vacuous:
                classes.append(dropped)
            search(keep, classes, steps, applied)
            if not step.vacuous:
                classes.pop()
            steps.pop()
            applied.discard(rule.name)

    search(start, [w0], [], set())
    return [seen[k] for k in sorted(seen)]


def _sort_key(ps: PartitionSequence) -> tuple:
    return (
        tuple(tuple(sorted(c)) for c in ps.classes),
        tuple((s.rule, s.vacuous) for s in ps.steps),
    )
