"""Cross-checks between the proof-theoretic engines and partition sequences.

* Default side: the extension model sets must be exactly the final classes
  of the default-rule partition sequences.
* Threshold side: the filtered sequences (every order) must be exactly the
  conclusion sequences of the threshold-rule partition sequences, and every
  threshold probability must equal the weighted proportion in the final class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .defaults import DefaultTheory, enumerate_extensions
from .logic import Atom, Formula, world_set_key
from .partition import default_rules_of, enumerate_partition_sequences, threshold_rules_of
from .threshold import (
    FilteredSequence,
    ThresholdCollection,
    ThresholdParams,
    enumerate_filtered_sequences,
    threshold_probability,
)
from .weights import WorldModel, proportion


@dataclass
class CheckResult:
    name: str
    passed: bool
    problems: list[str] = field(default_factory=list)
    expected: list = field(default_factory=list)
    actual: list = field(default_factory=list)


def check_default_partitions(theory: DefaultTheory) -> CheckResult:
    exts = {e.key() for e in enumerate_extensions(theory)}
    seqs = enumerate_partition_sequences(theory.sig, theory.facts, default_rules_of(theory))
    finals = {world_set_key(ps.last) for ps in seqs}
    problems = []
    for k in sorted(exts - finals):
        problems.append(f"extension with models {list(k)} has no partition sequence")
    for k in sorted(finals - exts):
        problems.append(f"partition final class {list(k)} is not an extension")
    return CheckResult("defaults", not problems, problems, sorted(exts), sorted(finals))


def check_threshold_partitions(
    coll: ThresholdCollection,
    m: WorldModel,
    params: ThresholdParams,
    queries: Optional[Sequence[Formula]] = None,
) -> CheckResult:
    if queries is None:
        queries = [*coll.thresholds, *(Atom(p) for p in coll.sig)]
    filtered = enumerate_filtered_sequences(coll, m, params, all_orders=True)
    by_formulas: dict[tuple[Formula, ...], FilteredSequence] = {s.formulas: s for s in filtered}
    seqs = enumerate_partition_sequences(
        coll.sig, coll.facts, threshold_rules_of(coll, m, params)
    )
    read_off = {ps.accepted: ps for ps in seqs}

    problems = []
    for phis in sorted(set(by_formulas) - set(read_off), key=_show):
        problems.append(f"filtered sequence {_show(phis)} has no partition sequence")
    for phis in sorted(set(read_off) - set(by_formulas), key=_show):
        problems.append(f"partition sequence {_show(phis)} is not a filtered sequence")
    for phis in sorted(set(read_off) & set(by_formulas), key=_show):
        fs, ps = by_formulas[phis], read_off[phis]
        for psi in queries:
            a = threshold_probability(coll, m, fs, psi)
            b = proportion(m, psi, ps.last)
            if a != b:
                problems.append(f"Pr({psi}) under {_show(phis)}: {a} != proportion {b}")
    return CheckResult(
        "thresholds",
        not problems,
        problems,
        sorted((_show(p) for p in by_formulas)),
        sorted((_show(p) for p in read_off)),
    )


def _show(phis: tuple[Formula, ...]) -> str:
    return "<" + ", ".join(str(f) for f in phis) + ">"
