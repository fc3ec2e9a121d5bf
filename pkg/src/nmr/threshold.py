"""Sequential thresholding.

A formula is accepted when its probability, conditioned on the facts and on
everything accepted before it, reaches ``1 - epsilon``. Accepted formulas then
become part of the conditioning context for the rest of the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import TheoryError, ZeroMassError
from .logic import Formula, Signature, WorldSet, formula_models, models_of
from .weights import RationalLike, WorldModel, conditional_probability, mass, proportion, to_rational


@dataclass(frozen=True)
class ThresholdCollection:
    sig: Signature
    thresholds: tuple[Formula, ...]
    facts: tuple[Formula, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "thresholds", tuple(self.thresholds))
        object.__setattr__(self, "facts", tuple(self.facts))
        if len(set(self.thresholds)) != len(self.thresholds):
            raise TheoryError("threshold set contains duplicate formulas")
        for f in (*self.thresholds, *self.facts):
            self.sig.check(f)


@dataclass(frozen=True)
class ThresholdParams:
    epsilon: Fraction

    def __post_init__(self) -> None:
        eps = to_rational(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not 0 <= eps < 1:
            raise ValueError(f"epsilon must satisfy 0 <= epsilon < 1, got {eps}")

    @classmethod
    def of(cls, epsilon: RationalLike) -> ThresholdParams:
        return cls(to_rational(epsilon))

    @property
    def threshold(self) -> Fraction:
        return 1 - self.epsilon


@dataclass(frozen=True)
class FilteredSequence:
    formulas: tuple[Formula, ...]
    step_probabilities: tuple[Fraction, ...]

    def __str__(self) -> str:
        return "<" + ", ".join(str(f) for f in self.formulas) + ">"


def step_probability(
    coll: ThresholdCollection, m: WorldModel, accepted: Sequence[Formula], phi: Formula
) -> Fraction:
    return conditional_probability(m, phi, [*coll.facts, *accepted])


def threshold_probability(
    coll: ThresholdCollection, m: WorldModel, seq: FilteredSequence, psi: Formula
) -> Fraction:
    return conditional_probability(m, psi, [*coll.facts, *seq.formulas])


def enumerate_filtered_sequences(
    coll: ThresholdCollection,
    m: WorldModel,
    params: ThresholdParams,
    all_orders: bool = False,
) -> list[FilteredSequence]:
    """Every maximal filtered sequence, found by depth-first search.

    By default sequences accepting the same set of formulas are collapsed to
    the first order the search meets (earliest threshold-set positions
    first); ``all_orders`` keeps them all. Output is sorted by the
    threshold-set positions of the accepted formulas.
    """
    sig = coll.sig
    start = models_of(coll.facts, sig)
    if mass(m, start) == 0:
        raise ZeroMassError("the fact set has zero mass")
    bar = params.threshold
    thresholds = coll.thresholds
    phi_models = [formula_models(f, sig) for f in thresholds]
    found: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = []
    visited: set[frozenset[int]] = set()

    def search(context: WorldSet, order: list[int], probs: list[Fraction]) -> None:
        if not all_orders:
            accepted = frozenset(order)
            if accepted in visited:
                return
            visited.add(accepted)
        total = mass(m, context)
        branched = False
        for i, models in enumerate(phi_models):
            if i in order:
                continue
            p = mass(m, context & models) / total
            if p >= bar:
                branched = True
                order.append(i)
                probs.append(p)
                search(context & models, order, probs)
                order.pop()
                probs.pop()
        if not branched:
            found.append((tuple(order), tuple(probs)))

    search(start, [], [])
    found.sort(key=lambda item: item[0])
    return [
        FilteredSequence(tuple(thresholds[i] for i in order), probs) for order, probs in found
    ]


def check_filtered_sequence(
    coll: ThresholdCollection,
    m: WorldModel,
    params: ThresholdParams,
    formulas: Sequence[Formula],
) -> bool:
    """Direct test of both acceptance and maximality, independent of the search."""
    bar = params.threshold
    if len(set(formulas)) != len(formulas):
        return False
    for i, phi in enumerate(formulas):
        if phi not in coll.thresholds:
            return False
        try:
            if step_probability(coll, m, formulas[:i], phi) < bar:
                return False
        except ZeroMassError:
            return False
    final = models_of([*coll.facts, *formulas], coll.sig)
    if mass(m, final) == 0:
        return False
    return all(
        proportion(m, phi, final) < bar for phi in coll.thresholds if phi not in formulas
    )
