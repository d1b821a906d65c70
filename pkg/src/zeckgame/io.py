"""JSON and CSV serialization of results.

Every JSON document is an envelope ``{version, n, command, params, ...}``.
Exact rationals are written as ``"p/q"`` strings and big integers as JSON
integers, so exact results survive a round trip.  Output is key-sorted and
newline-terminated.
"""

from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction

from .analysis import LengthDistribution
from .engine import Game, MoveCounts
from .stats import summarize

__all__ = [
    "VERSION",
    "class_record",
    "distribution_csv",
    "distribution_json",
    "dumps",
    "envelope",
    "game_record",
    "parse_weight",
    "read_distribution_csv",
]

VERSION = "0.1.0"


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, Game):
        return str(obj)
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_default, sort_keys=True, indent=2) + "\n"


def envelope(command: str, n, params: dict, **payload) -> dict:
    return {"version": VERSION, "n": n, "command": command, "params": params, **payload}


def parse_weight(text: str, weight_kind: str):
    if weight_kind == "count":
        return int(text)
    if weight_kind == "rational":
        return Fraction(text)
    return float(text)


def _weight_text(w) -> str:
    return repr(w) if isinstance(w, float) else str(w)


def distribution_csv(dist: LengthDistribution) -> str:
    """``length,weight`` rows in increasing length."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["length", "weight"])
    for k, w in dist.weights.items():
        writer.writerow([k, _weight_text(w)])
    return buf.getvalue()


def read_distribution_csv(text: str, n: int, measure: str, weight_kind: str,
                          total_games: int | None = None) -> LengthDistribution:
    rows = list(csv.DictReader(_io.StringIO(text)))
    weights = {int(r["length"]): parse_weight(r["weight"], weight_kind) for r in rows}
    return LengthDistribution(n, measure, weight_kind, weights, total_games)


def _moments(dist: LengthDistribution) -> dict:
    s = summarize(dist)
    out = s.as_dict()
    if s.exact_mean is not None:
        out["exact_mean"] = s.exact_mean
        out["exact_variance"] = s.exact_variance
    return out


def distribution_json(dist: LengthDistribution, command: str = "distribution",
                      params: dict | None = None) -> dict:
    return envelope(
        command,
        dist.n,
        params or {"measure": dist.measure},
        measure=dist.measure,
        weight_kind=dist.weight_kind,
        total_games=dist.total_games,
        moments=_moments(dist),
        weights={str(k): w for k, w in dist.weights.items()},
    )


def game_record(game: Game, counts: MoveCounts) -> dict:
    return {
        "game": str(game),
        "length": len(game),
        "mc": {str(k): v for k, v in counts.mc.items()},
        "ms": {str(k): v for k, v in counts.ms.items()},
        "combines": counts.combines,
        "splits": counts.splits,
        "type_a_total": counts.type_a_total,
        "type_b_total": counts.type_b_total,
    }


def class_record(summary, ks: float | None) -> dict:
    """``{rep, scheme, m, class_size, p_i, ks, class_prob}`` for one class."""
    return {
        "rep": str(summary.representative),
        "scheme": summary.scheme,
        "m": summary.m,
        "class_size": summary.class_size,
        "p_i": list(summary.bernoulli_params),
        "n_i": list(summary.branch_counts),
        "ks": ks,
        "class_prob": summary.class_prob,
    }
