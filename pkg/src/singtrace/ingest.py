"""Reading and writing function-family descriptions.

The JSON schema uses a "kind" discriminator:

    {"kind": "power_log",  "scale": C, "p": p, "q": q}
    {"kind": "exponential","alpha": a}
    {"kind": "pure_power", "p": p, "scale": C, "cap": M}
    {"kind": "step",       "breakpoints": [...], "values": [...]}
    {"kind": "g_step",     "breakpoints": [...], "values": [...],
                           "tail": "hold"|"infinite", "horizon": t?}
    {"kind": "sampled",    "grid": [...], "values": [...], "tail": {...}|null}
    {"kind": "spectrum",   "pairs": [[value, weight], ...]}

"step" describes a decay profile in the x coordinate (one value per
bounded piece, zero afterwards); "g_step" describes a step function of
the logarithmic coordinate and is what staircase constructions
serialize to, since their breakpoints overflow any x-space encoding.
Spectra may alternatively arrive as two-column CSV (value, weight),
header optional.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .errors import SingTraceError
from .functions import (
    EigenvalueFunction,
    Exponential,
    GFunction,
    GStep,
    PowerLog,
    PurePower,
    SampledMu,
    SpectralData,
    StepMu,
    g_step,
    rearrange,
)


class ParseError(SingTraceError, ValueError):
    """Malformed family description or spectrum file."""


def _require(obj, key, kind):
    if key not in obj:
        raise ParseError(f"'{kind}' needs a '{key}' field")
    return obj[key]


def family_from_dict(obj) -> EigenvalueFunction | GFunction:
    if not isinstance(obj, dict):
        raise ParseError("family description must be a JSON object")
    kind = _require(obj, "kind", "family")
    try:
        if kind == "power_log":
            fam = PowerLog(
                scale=float(obj.get("scale", 1.0)),
                p=float(obj.get("p", 1.0)),
                q=float(obj.get("q", 0.0)),
            )
            return EigenvalueFunction(fam)
        if kind == "exponential":
            return EigenvalueFunction(Exponential(alpha=float(_require(obj, "alpha", kind))))
        if kind == "pure_power":
            fam = PurePower(
                p=float(_require(obj, "p", kind)),
                scale=float(obj.get("scale", 1.0)),
                cap=float(obj.get("cap", 1.0)),
            )
            return EigenvalueFunction(fam)
        if kind == "step":
            return EigenvalueFunction(
                StepMu(
                    tuple(float(b) for b in _require(obj, "breakpoints", kind)),
                    tuple(float(v) for v in _require(obj, "values", kind)),
                )
            )
        if kind == "g_step":
            values = [
                math.inf if v in ("inf", "Infinity", None) else float(v)
                for v in _require(obj, "values", kind)
            ]
            tail = obj.get("tail", "hold")
            if tail == "infinite" and not math.isinf(values[-1]):
                values.append(math.inf)
            horizon = obj.get("horizon")
            integrable = obj.get("integrable")
            return g_step(
                tuple(float(b) for b in _require(obj, "breakpoints", kind)),
                tuple(values),
                horizon=None if horizon is None else float(horizon),
                integrable=integrable,
                label=str(obj.get("label", "")),
            )
        if kind == "sampled":
            tail_obj = obj.get("tail")
            tail = None
            if tail_obj is not None:
                tail_fn = family_from_dict(tail_obj)
                if not isinstance(tail_fn, EigenvalueFunction) or tail_fn.a or tail_fn.b:
                    raise ParseError("sampled tail must be a plain mu-side family")
                tail = tail_fn.family
            return EigenvalueFunction(
                SampledMu(
                    tuple(float(x) for x in _require(obj, "grid", kind)),
                    tuple(float(v) for v in _require(obj, "values", kind)),
                    tail,
                )
            )
        if kind == "spectrum":
            pairs = tuple(
                (float(v), float(w)) for v, w in _require(obj, "pairs", kind)
            )
            return rearrange(SpectralData(pairs))
    except ParseError:
        raise
    except SingTraceError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad '{kind}' description: {exc}") from exc
    raise ParseError(f"unknown family kind {kind!r}")


def family_to_dict(fn) -> dict:
    """Serializable description; staircases land in the g_step format."""
    shift_fields = {}
    if isinstance(fn, (EigenvalueFunction, GFunction)):
        if fn.a or fn.b:
            shift_fields = {"shift_a": fn.a, "shift_b": fn.b}
        fam = fn.family
    else:
        fam = fn
    if isinstance(fam, PowerLog):
        out = {"kind": "power_log", "scale": fam.scale, "p": fam.p, "q": fam.q}
    elif isinstance(fam, Exponential):
        out = {"kind": "exponential", "alpha": fam.alpha}
    elif isinstance(fam, PurePower):
        out = {"kind": "pure_power", "p": fam.p, "scale": fam.scale, "cap": fam.cap}
    elif isinstance(fam, StepMu):
        out = {"kind": "step", "breakpoints": list(fam.breakpoints), "values": list(fam.values)}
    elif isinstance(fam, GStep):
        vals = ["inf" if math.isinf(v) else v for v in fam.values]
        out = {
            "kind": "g_step",
            "breakpoints": list(fam.breakpoints),
            "values": vals,
            "tail": "infinite" if fam.finite_rank else "hold",
        }
        if fam.horizon is not None:
            out["horizon"] = fam.horizon
        if fam.integrable is not None:
            out["integrable"] = fam.integrable
        if fam.label:
            out["label"] = fam.label
    elif isinstance(fam, SampledMu):
        out = {"kind": "sampled", "grid": list(fam.grid), "values": list(fam.values)}
        out["tail"] = None if fam.tail is None else family_to_dict(fam.tail)
    else:
        raise ParseError(f"cannot serialize family {type(fam).__name__}")
    out.update(shift_fields)
    return out


def spectrum_from_csv(path) -> EigenvalueFunction:
    """Two columns value, weight; a non-numeric first row is a header."""
    pairs = []
    with open(path, newline="") as fh:
        for row_no, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row if c.strip() != ""]
            if not cells:
                continue
            if len(cells) != 2:
                raise ParseError(f"{path}:{row_no}: expected two columns, got {len(cells)}")
            try:
                v, w = float(cells[0]), float(cells[1])
            except ValueError:
                if row_no == 1:
                    continue  # header
                raise ParseError(f"{path}:{row_no}: non-numeric entry") from None
            pairs.append((v, w))
    return rearrange(SpectralData(tuple(pairs)))


def load_input(path) -> EigenvalueFunction | GFunction:
    """Family JSON or spectrum CSV, by extension."""
    p = Path(path)
    if not p.exists():
        raise ParseError(f"no such input file: {path}")
    if p.suffix.lower() == ".csv":
        return spectrum_from_csv(p)
    try:
        obj = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    fn = family_from_dict(obj)
    a = float(obj.get("shift_a", 0.0)) if isinstance(obj, dict) else 0.0
    b = float(obj.get("shift_b", 0.0)) if isinstance(obj, dict) else 0.0
    if a or b:
        if isinstance(fn, GFunction):
            return fn.shifted(a, b)
        return EigenvalueFunction(fn.family, fn.a + a, fn.b + b)
    return fn
