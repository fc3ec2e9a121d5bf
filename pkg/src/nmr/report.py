"""Structured (JSON) and text reports for every engine.

Structured reports use two conventions that :func:`decode_report` reverses:
rationals are always written ``"p/q"`` and world sets are written as sorted
id lists under the key ``"models"``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .defaults import DefaultTheory, Extension
from .logic import Formula, Signature, format_world
from .partition import PartitionSequence
from .ranking import RankedExtension
from .threshold import FilteredSequence

_RATIONAL_RE = re.compile(r"-?\d+/\d+")


def rat(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def world_block(sig: Signature, ws: Iterable[int]) -> dict[str, Any]:
    ids = sorted(ws)
    return {"models": ids, "worlds": [format_world(sig, w) for w in ids]}


def extensions_report(sig: Signature, exts: Sequence[Extension]) -> dict[str, Any]:
    return {
        "command": "extensions",
        "signature": list(sig.props),
        "count": len(exts),
        "extensions": [
            {"generating": list(e.generating), "inconsistent": e.inconsistent, **world_block(sig, e.model_set)}
            for e in exts
        ],
    }


def threshold_report(
    sig: Signature,
    epsilon: Fraction,
    seqs: Sequence[FilteredSequence],
    queries: Sequence[tuple[Formula, Sequence[Fraction]]] = (),
    all_orders: bool = False,
) -> dict[str, Any]:
    out = []
    for k, s in enumerate(seqs):
        out.append(
            {
                "formulas": [str(f) for f in s.formulas],
                "step_probabilities": [rat(p) for p in s.step_probabilities],
                "queries": {str(q): rat(vals[k]) for q, vals in queries},
            }
        )
    return {
        "command": "threshold",
        "signature": list(sig.props),
        "epsilon": rat(epsilon),
        "all_orders": all_orders,
        "count": len(seqs),
        "sequences": out,
    }


def partitions_report(
    sig: Signature, mode: str, seqs: Sequence[PartitionSequence], epsilon: Optional[Fraction] = None
) -> dict[str, Any]:
    out = []
    for ps in seqs:
        inner = [s for s in ps.steps if not s.vacuous]
        classes = []
        for i, c in enumerate(ps.classes):
            entry = world_block(sig, c)
            if 0 < i < len(ps.classes) - 1:
                entry["rule"] = inner[i - 1].rule
                entry["value"] = rat(inner[i - 1].value)
            classes.append(entry)
        out.append(
            {
                "classes": classes,
                "steps": [
                    {"rule": s.rule, "res": str(s.res), "vacuous": s.vacuous, "value": rat(s.value)}
                    for s in ps.steps
                ],
            }
        )
    return {
        "command": "partitions",
        "mode": mode,
        "signature": list(sig.props),
        "epsilon": rat(epsilon),
        "count": len(seqs),
        "sequences": out,
    }


def rank_report(sig: Signature, ranking: Sequence[RankedExtension]) -> dict[str, Any]:
    ranks = [r.rank for r in ranking if r.rank is not None]
    return {
        "command": "rank",
        "signature": list(sig.props),
        "tie": len(ranks) != len(set(ranks)),
        "ranking": [
            {
                "rank": r.rank,
                "generating": list(r.extension.generating),
                **world_block(sig, r.extension.model_set),
                "eps_min": rat(r.eps_min),
                "witness_order": list(r.witness_order),
                "witness_step_probabilities": [rat(p) for p in r.witness_step_probs],
            }
            for r in ranking
        ],
    }


def models_report(sig: Signature, formula: Formula, ws: Iterable[int]) -> dict[str, Any]:
    return {"command": "models", "signature": list(sig.props), "formula": str(formula), **world_block(sig, ws)}


def encode(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def _decode_value(v: Any) -> Any:
    if isinstance(v, str) and _RATIONAL_RE.fullmatch(v):
        return Fraction(v)
    if isinstance(v, list):
        return [_decode_value(x) for x in v]
    return v


def _hook(obj: dict[str, Any]) -> dict[str, Any]:
    out = {}
    for k, v in obj.items():
        if k == "models" and isinstance(v, list):
            out[k] = frozenset(v)
        else:
            out[k] = _decode_value(v)
    return out


def decode_report(text: str) -> dict[str, Any]:
    """Parse a structured report back, restoring Fractions and world sets."""
    return json.loads(text, object_hook=_hook)


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------


def _worlds(sig: Signature, ids: Iterable[int]) -> str:
    ids = sorted(ids)
    return "{" + ", ".join(format_world(sig, w) for w in ids) + "}" if ids else "{}"


def render_extensions(theory: DefaultTheory, exts: Sequence[Extension]) -> str:
    sig = theory.sig
    lines = [f"{len(exts)} extension{'s' if len(exts) != 1 else ''}"]
    for i, e in enumerate(exts, 1):
        gen = ", ".join(e.generating) or "-"
        flag = "  [inconsistent]" if e.inconsistent else ""
        lines.append(f"E{i}: generating {{{gen}}}{flag}")
        lines.append(f"    models {_worlds(sig, e.model_set)}")
    return "\n".join(lines)


def render_threshold(report: dict[str, Any]) -> str:
    lines = [f"epsilon = {report['epsilon']}: {report['count']} filtered sequence(s)"]
    for i, s in enumerate(report["sequences"], 1):
        steps = ", ".join(f"{f} @ {p}" for f, p in zip(s["formulas"], s["step_probabilities"]))
        lines.append(f"S{i}: <{steps}>")
        for q, v in s["queries"].items():
            lines.append(f"    Pr({q}) = {v}")
    return "\n".join(lines)


def render_partitions(sig: Signature, report: dict[str, Any]) -> str:
    lines = [f"{report['count']} partition sequence(s), mode {report['mode']}"]
    for i, s in enumerate(report["sequences"], 1):
        lines.append(f"S{i}:")
        classes = s["classes"]
        for j, c in enumerate(classes):
            if j == 0:
                note = "background facts false"
            elif j == len(classes) - 1:
                note = "final context"
            else:
                note = f"rule {c['rule']}" + (f", % = {c['value']}" if c.get("value") else "")
            lines.append(f"  W{j} ({note}): {_worlds(sig, c['models'])}")
        vac = [st["rule"] for st in s["steps"] if st["vacuous"]]
        if vac:
            lines.append(f"  vacuous applications: {', '.join(vac)}")
    return "\n".join(lines)


def render_rank(sig: Signature, report: dict[str, Any]) -> str:
    lines = []
    for r in report["ranking"]:
        rank = r["rank"] if r["rank"] is not None else "-"
        eps = r["eps_min"] if r["eps_min"] is not None else "unrankable"
        lines.append(
            f"rank {rank}: eps_min = {eps}  generating {{{', '.join(r['generating']) or '-'}}}"
        )
        lines.append(f"    models {_worlds(sig, r['models'])}")
        if r["witness_order"]:
            steps = ", ".join(
                f"{n} @ {p}" for n, p in zip(r["witness_order"], r["witness_step_probabilities"])
            )
            lines.append(f"    witness <{steps}>")
    if report["tie"]:
        lines.append("tie: several extensions share a rank")
    return "\n".join(lines)
