"""Ranking competing extensions by the smallest epsilon that replays them.

For a grounded ordering of an extension's generating defaults, the epsilon
needed to accept every consequent in turn is the largest improbability
``1 - Pr(γ_i | F ∪ {γ_1 .. γ_{i-1}})`` along the way. ``eps_min`` is the
smallest such value over all grounded orderings; smaller is better.
Orderings that condition on a zero-mass set, or hit a step of probability
zero, cannot be replayed at any admissible epsilon and are ignored.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .defaults import DefaultTheory, Extension, enumerate_extensions, generating_orderings
from .errors import CapExceededError, NonNormalError, UnrankableError, ZeroMassError
from .weights import WorldModel, conditional_probability, mass

MAX_GENERATING = 8


@dataclass(frozen=True)
class RankedExtension:
    extension: Extension
    eps_min: Optional[Fraction]
    witness_order: tuple[str, ...]
    witness_step_probs: tuple[Fraction, ...]
    rank: Optional[int] = None

    @property
    def rankable(self) -> bool:
        return self.eps_min is not None


def _require_normal(theory: DefaultTheory) -> None:
    bad = [d.name for d in theory.defaults if not d.is_normal]
    if bad:
        raise NonNormalError(f"ranking needs a normal theory; not normal: {', '.join(bad)}")


def epsilon_min(
    theory: DefaultTheory,
    m: WorldModel,
    ext: Extension,
    max_generating: int = MAX_GENERATING,
) -> RankedExtension:
    _require_normal(theory)
    if len(ext.generating) > max_generating:
        raise CapExceededError(
            f"{len(ext.generating)} generating defaults exceeds the cap of {max_generating}"
        )
    if mass(m, theory.fact_models()) == 0:
        raise ZeroMassError("the fact set has zero mass")

    best: Optional[tuple[Fraction, tuple[str, ...], tuple[Fraction, ...]]] = None
    for order in generating_orderings(theory, ext):
        given = list(theory.facts)
        probs = []
        try:
            for name in order:
                gamma = theory.rule(name).consequent
                probs.append(conditional_probability(m, gamma, given))
                given.append(gamma)
        except ZeroMassError:
            continue
        worst = max((1 - p for p in probs), default=Fraction(0))
        if worst == 1:
            # a zero-probability step: no epsilon below 1 accepts it
            continue
        if best is None or worst < best[0]:
            best = (worst, order, tuple(probs))
    if best is None:
        raise UnrankableError(
            f"extension generated by {list(ext.generating)} has no ordering that any epsilon below 1 replays"
        )
    return RankedExtension(ext, *best)


GoodnessMeasure = Callable[[DefaultTheory, WorldModel, Extension], RankedExtension]


def rank_extensions(
    theory: DefaultTheory,
    m: WorldModel,
    measure: GoodnessMeasure = epsilon_min,
) -> list[RankedExtension]:
    """Extensions ascending by ``eps_min``; equal values share a rank.

    Unrankable extensions come last with ``rank`` and ``eps_min`` unset.
    """
    _require_normal(theory)
    ranked, unrankable = [], []
    for ext in enumerate_extensions(theory):
        try:
            ranked.append(measure(theory, m, ext))
        except UnrankableError:
            unrankable.append(RankedExtension(ext, None, (), ()))
    # enumerate_extensions is already in canonical order; sort is stable
    ranked.sort(key=lambda r: r.eps_min)
    out = []
    for i, r in enumerate(ranked):
        if i and r.eps_min == ranked[i - 1].eps_min:
            rank = out[-1].rank
        else:
            rank = i + 1
        out.append(dataclasses.replace(r, rank=rank))
    return out + unrankable
