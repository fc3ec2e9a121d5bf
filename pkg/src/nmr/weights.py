"""Weighted possible worlds and exact conditional probabilities.

Every quantity is a :class:`fractions.Fraction`; nothing here rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import WeightError, ZeroMassError
from .logic import Formula, Signature, WorldSet, formula_models, models_of

RationalLike = Union[Fraction, int, str]


def to_rational(value: RationalLike) -> Fraction:
    """Exact conversion of ``N``, ``N/D`` or a finite decimal string."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    try:
        return Fraction(value.strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc


@dataclass(frozen=True)
class WorldModel:
    """A weight for every world of ``sig``; ``weights[i]`` belongs to world id ``i``."""

    sig: Signature
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != self.sig.world_count:
            raise WeightError(
                f"expected {self.sig.world_count} weights, got {len(self.weights)}"
            )
        if any(w < 0 for w in self.weights):
            raise WeightError("world weights must be nonnegative")
        if sum(self.weights) <= 0:
            raise WeightError("total mass of the world model must be positive")

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def weight(self, wid: int) -> Fraction:
        return self.weights[wid]

    def scaled(self, c: RationalLike) -> WorldModel:
        c = to_rational(c)
        if c <= 0:
            raise WeightError("scale factor must be positive")
        return WorldModel(self.sig, tuple(w * c for w in self.weights))


def build_model(
    sig: Signature,
    entries: Iterable[tuple[Mapping[str, bool], RationalLike]] = (),
    default_weight: RationalLike = 1,
) -> WorldModel:
    """Weight listed worlds explicitly and every other world with ``default_weight``."""
    default = to_rational(default_weight)
    if default < 0:
        raise WeightError(f"default weight {default} is negative")
    weights = [default] * sig.world_count
    listed: set[int] = set()
    for assignment, w in entries:
        wid = sig.world_id(assignment)
        if wid in listed:
            raise WeightError(f"world {assignment} listed twice")
        w = to_rational(w)
        if w < 0:
            raise WeightError(f"weight {w} of world {assignment} is negative")
        listed.add(wid)
        weights[wid] = w
    return WorldModel(sig, tuple(weights))


def uniform_model(sig: Signature) -> WorldModel:
    return build_model(sig)


def mass(m: WorldModel, ws: Iterable[int]) -> Fraction:
    return sum((m.weights[w] for w in ws), Fraction(0))


def proportion(m: WorldModel, phi: Formula, context: WorldSet) -> Fraction:
    """Weighted share of ``context`` in which ``phi`` holds."""
    total = mass(m, context)
    if total == 0:
        raise ZeroMassError("context has zero total weight")
    return mass(m, context & formula_models(phi, m.sig)) / total


def conditional_probability(m: WorldModel, psi: Formula, given: Sequence[Formula]) -> Fraction:
    """``Pr(psi | given)``, with ``given`` read as a conjunction."""
    context = models_of(given, m.sig)
    if mass(m, context) == 0:
        raise ZeroMassError(
            "conditioning set has zero mass: " + ", ".join(str(g) for g in given)
        )
    return proportion(m, psi, context)
