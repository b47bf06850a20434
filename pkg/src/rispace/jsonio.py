"""JSON encoding and decoding for the shipped value types.

Numbers travel as JSON numbers when exactly representable in double
precision, as exact strings ("3/7", "inf") otherwise; decoding accepts both
forms everywhere, and float literals in the input text are read exactly as
decimals (0.1 becomes 1/10), so a round trip never loses precision.

Step functions serialize with the breakpoint layout fixed per space kind:

* half-line — breakpoints start at 0, ``values`` fills the gaps between
  consecutive breakpoints, ``right_tail`` is the value on the final ray;
* interval — breakpoints start at 0 and end at the length; no tails;
* line — ``left_tail`` before the first breakpoint, ``values`` between,
  ``right_tail`` after (a constant has no breakpoints and equal tails).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .num import INF, NEG_INF, Real, as_real, json_real
from .space import (
    ATOMIC_FINITE,
    ATOMIC_N,
    ATOMIC_Z,
    LEBESGUE_HALFLINE,
    LEBESGUE_INTERVAL,
    LEBESGUE_LINE,
    AtomicSet,
    IntervalSet,
    MeasureSpace,
    atomic_finite,
    atomic_n,
    atomic_z,
    halfline,
    interval,
    line,
)
from .spaces import (
    LogClip,
    Lorentz,
    Lp,
    MarcStrong,
    MarcWeak,
    NormSpec,
    Power,
    StepApprox,
    WeakLp,
    XiWeight,
)
from .stepfn import AtomSeq, MeasFn, StepFn, seq, step
from .symbols import (
    Affine,
    AffineTail,
    AtomicSymbol,
    Branch,
    ExpRecip,
    IntervalSymbol,
    PowerOnUnit,
    ShiftedPower,
    Symbol,
    SymbolAnalysis,
)


def _parse_float(text: str) -> Fraction:
    return Fraction(text)


def loads(text: str):
    """json.loads with float literals read exactly."""
    return json.loads(text, parse_float=_parse_float)


def dumps(obj) -> str:
    """Deterministic serialization: sorted keys, fixed indentation."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _num(x) -> Real:
    try:
        return as_real(x)
    except (TypeError, ValueError) as e:
        raise ValueError(f"bad number {x!r}: {e}") from None


def _endpoint(x) -> Real:
    if x == "inf":
        return INF
    if x == "-inf":
        return NEG_INF
    return _num(x)


# ---------------------------------------------------------------------------
# Spaces and sets
# ---------------------------------------------------------------------------

_SPACE_BUILDERS = {
    LEBESGUE_HALFLINE: lambda o: halfline(),
    LEBESGUE_LINE: lambda o: line(),
    LEBESGUE_INTERVAL: lambda o: interval(_num(o["length"])),
    ATOMIC_N: lambda o: atomic_n(_num(o.get("atom_mass", 1))),
    ATOMIC_Z: lambda o: atomic_z(_num(o.get("atom_mass", 1))),
    ATOMIC_FINITE: lambda o: atomic_finite(int(o["count"]), _num(o.get("atom_mass", 1))),
}


def space_to_obj(sp: MeasureSpace) -> dict:
    out = {"kind": sp.kind}
    if sp.kind == LEBESGUE_INTERVAL:
        out["length"] = json_real(sp.length)
    if sp.is_atomic:
        out["atom_mass"] = json_real(sp.atom_mass)
    if sp.kind == ATOMIC_FINITE:
        out["count"] = sp.count
    return out


def space_from_obj(obj) -> MeasureSpace:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("space object needs a 'kind'")
    kind = obj["kind"]
    if kind not in _SPACE_BUILDERS:
        raise ValueError(f"unknown space kind {kind!r}")
    try:
        return _SPACE_BUILDERS[kind](obj)
    except KeyError as e:
        raise ValueError(f"space {kind!r} is missing field {e}") from None


def set_to_obj(E) -> dict:
    if isinstance(E, AtomicSet):
        return {
            "space": space_to_obj(E.space),
            "indices": sorted(E.atoms),
            "cofinite": E.cofinite,
        }
    return {
        "space": space_to_obj(E.space),
        "intervals": [
            ["-inf" if a == NEG_INF else json_real(a), "inf" if b == INF else json_real(b)]
            for a, b in E.intervals
        ],
    }


def set_from_obj(obj):
    sp = space_from_obj(obj["space"])
    if sp.is_atomic:
        return AtomicSet(sp, frozenset(int(j) for j in obj.get("indices", ())),
                         bool(obj.get("cofinite", False)))
    pairs = [(_endpoint(a), _endpoint(b)) for a, b in obj.get("intervals", ())]
    return IntervalSet(sp, tuple(pairs))


# ---------------------------------------------------------------------------
# Functions
# ---------------------------------------------------------------------------


def measfn_to_obj(f: MeasFn) -> dict:
    if isinstance(f, AtomSeq):
        out = {
            "space": space_to_obj(f.space),
            "entries": [[j, json_real(v)] for j, v in f.entries],
        }
        if f.space.kind == ATOMIC_N:
            out["tail_value"] = json_real(f.tail)
        return out
    sp = f.space
    if sp.kind == LEBESGUE_HALFLINE:
        return {
            "space": space_to_obj(sp),
            "breakpoints": [0] + [json_real(c) for c in f.cuts],
            "values": [json_real(v) for v in f.vals[:-1]],
            "right_tail": json_real(f.vals[-1]),
        }
    if sp.kind == LEBESGUE_INTERVAL:
        return {
            "space": space_to_obj(sp),
            "breakpoints": [0] + [json_real(c) for c in f.cuts] + [json_real(sp.length)],
            "values": [json_real(v) for v in f.vals],
        }
    return {
        "space": space_to_obj(sp),
        "breakpoints": [json_real(c) for c in f.cuts],
        "left_tail": json_real(f.vals[0]),
        "values": [json_real(v) for v in f.vals[1:-1]] if f.cuts else [],
        "right_tail": json_real(f.vals[-1]),
    }


def measfn_from_obj(obj) -> MeasFn:
    if not isinstance(obj, dict) or "space" not in obj:
        raise ValueError("function object needs a 'space'")
    sp = space_from_obj(obj["space"])
    if sp.is_atomic:
        if "entries" not in obj:
            raise ValueError("atomic function object needs 'entries'")
        entries = [(int(j), _num(v)) for j, v in obj["entries"]]
        tail = _num(obj.get("tail_value", 0))
        return seq(sp, entries, tail=tail)
    if "breakpoints" not in obj:
        raise ValueError("step function object needs 'breakpoints'")
    bps = [_num(b) for b in obj["breakpoints"]]
    values = [_num(v) for v in obj.get("values", ())]
    if any(not a < b for a, b in zip(bps, bps[1:])):
        raise ValueError("breakpoints must be strictly increasing")
    if sp.kind == LEBESGUE_HALFLINE:
        if not bps or bps[0] != 0:
            raise ValueError("half-line breakpoints must start at 0")
        if len(values) != len(bps) - 1 or "right_tail" not in obj:
            raise ValueError("need one value per gap plus a right_tail")
        return step(sp, bps[1:], values + [_num(obj["right_tail"])])
    if sp.kind == LEBESGUE_INTERVAL:
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != sp.length:
            raise ValueError("interval breakpoints must run from 0 to the length")
        if len(values) != len(bps) - 1:
            raise ValueError("need exactly one value per gap")
        return step(sp, bps[1:-1], values)
    if len(values) != max(len(bps) - 1, 0) or "left_tail" not in obj or "right_tail" not in obj:
        raise ValueError("line functions need both tails and one value per gap")
    left, right = _num(obj["left_tail"]), _num(obj["right_tail"])
    if not bps:
        if left != right:
            raise ValueError("a constant line function must have equal tails")
        return step(sp, [], [left])
    return step(sp, bps, [left] + values + [right])


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------

_FORM_NAMES = {
    Affine: "affine",
    PowerOnUnit: "power_on_unit",
    ShiftedPower: "shifted_power",
    AffineTail: "affine_tail",
    ExpRecip: "exp_recip",
}


def _form_to_obj(form) -> dict:
    out = {"kind": _FORM_NAMES[type(form)]}
    if isinstance(form, Affine):
        out["alpha"] = json_real(form.alpha)
        out["beta"] = json_real(form.beta)
    elif isinstance(form, (PowerOnUnit, ShiftedPower, AffineTail)):
        out["n"] = form.n
    return out


def _form_from_obj(obj):
    if not isinstance(obj, dict):
        raise ValueError("branch form must be an object")
    if "power" in obj and "kind" not in obj:  # accepted shorthand
        return PowerOnUnit(int(obj["power"]))
    kind = obj.get("kind")
    if kind == "affine":
        return Affine(_num(obj["alpha"]), _num(obj["beta"]))
    if kind == "power_on_unit":
        return PowerOnUnit(int(obj["n"]))
    if kind == "shifted_power":
        return ShiftedPower(int(obj["n"]))
    if kind == "affine_tail":
        return AffineTail(int(obj["n"]))
    if kind == "exp_recip":
        return ExpRecip()
    raise ValueError(f"unknown branch form {kind!r}")


def symbol_to_obj(sym: Symbol) -> dict:
    if isinstance(sym, AtomicSymbol):
        out = {
            "space": space_to_obj(sym.space),
            "table": [[j, k] for j, k in sym.table],
        }
        if sym.shift is not None:
            out["shift"] = sym.shift
        return out
    return {
        "space": space_to_obj(sym.space),
        "branches": [
            {
                "lo": "-inf" if br.lo == NEG_INF else json_real(br.lo),
                "hi": "inf" if br.hi == INF else json_real(br.hi),
                "form": _form_to_obj(br.form),
            }
            for br in sym.branches
        ],
    }


def symbol_from_obj(obj) -> Symbol:
    if not isinstance(obj, dict) or "space" not in obj:
        raise ValueError("symbol object needs a 'space'")
    sp = space_from_obj(obj["space"])
    if sp.is_atomic:
        if "table" not in obj:
            raise ValueError("atomic symbol needs a 'table'")
        table = tuple((int(j), int(k)) for j, k in obj["table"])
        shift = obj.get("shift")
        return AtomicSymbol(sp, table, None if shift is None else int(shift))
    if "branches" not in obj:
        raise ValueError("interval symbol needs 'branches'")
    branches = tuple(
        Branch(_endpoint(b["lo"]), _endpoint(b["hi"]), _form_from_obj(b["form"]))
        for b in obj["branches"]
    )
    return IntervalSymbol(sp, branches)


# ---------------------------------------------------------------------------
# Norm specs, quasiconcave functions, weights
# ---------------------------------------------------------------------------


def phi_to_obj(phi) -> dict:
    if isinstance(phi, Power):
        return {"kind": "power", "alpha": json_real(phi.alpha)}
    if isinstance(phi, LogClip):
        return {"kind": "logclip"}
    return {
        "kind": "step_approx",
        "knots": [[json_real(t), json_real(v)] for t, v in phi.knots],
        "final_slope": json_real(phi.final_slope),
    }


def phi_from_obj(obj):
    kind = obj.get("kind")
    if kind == "power":
        return Power(_num(obj["alpha"]))
    if kind == "logclip":
        return LogClip()
    if kind == "step_approx":
        knots = tuple((_num(t), _num(v)) for t, v in obj["knots"])
        return StepApprox(knots, _num(obj.get("final_slope", 0)))
    raise ValueError(f"unknown quasiconcave kind {kind!r}")


def normspec_to_obj(spec: NormSpec) -> dict:
    base = {"space": space_to_obj(spec.space)}
    if isinstance(spec, Lp):
        return {"kind": "lp", "p": json_real(spec.p), **base}
    if isinstance(spec, Lorentz):
        return {"kind": "lorentz", "p": json_real(spec.p), "q": json_real(spec.q), **base}
    if isinstance(spec, WeakLp):
        return {"kind": "weak_lp", "p": json_real(spec.p), **base}
    if isinstance(spec, MarcWeak):
        return {"kind": "marcinkiewicz_weak", "phi": phi_to_obj(spec.phi), **base}
    if isinstance(spec, MarcStrong):
        return {"kind": "marcinkiewicz_strong", "phi": phi_to_obj(spec.phi), **base}
    raise TypeError(f"not a norm spec: {spec!r}")


def normspec_from_obj(obj) -> NormSpec:
    if not isinstance(obj, dict) or "space" not in obj:
        raise ValueError("norm spec needs a 'space'")
    sp = space_from_obj(obj["space"])
    kind = obj.get("kind")
    if kind == "lp":
        return Lp(sp, _endpoint(obj["p"]))
    if kind == "lorentz":
        return Lorentz(sp, _num(obj["p"]), _num(obj["q"]))
    if kind == "weak_lp":
        return WeakLp(sp, _num(obj["p"]))
    if kind == "marcinkiewicz_weak":
        return MarcWeak(sp, phi_from_obj(obj["phi"]))
    if kind == "marcinkiewicz_strong":
        return MarcStrong(sp, phi_from_obj(obj["phi"]))
    raise ValueError(f"unknown norm kind {kind!r}")


def xiweight_to_obj(w: XiWeight) -> dict:
    return {"weight": measfn_to_obj(w.weight)}


def xiweight_from_obj(obj) -> XiWeight:
    if not isinstance(obj, dict) or "weight" not in obj:
        raise ValueError("xi weight needs a 'weight' function")
    fn = measfn_from_obj(obj["weight"])
    if not isinstance(fn, StepFn):
        raise ValueError("xi weights are step functions on the half-line")
    return XiWeight(fn)


def analysis_to_obj(ana: SymbolAnalysis) -> dict:
    return {
        "measure_bound": json_real(ana.measure_bound),
        "lower_bound": json_real(ana.lower_bound),
        "power_bounds": [[n, json_real(a)] for n, a in ana.power_bounds.per_n],
        "power_bound_sup": json_real(ana.power_bounds.sup),
        "power_certified": ana.power_bounds.certified,
        "condition_I1": ana.condition_I1,
        "condition_I3": ana.condition_I3,
        "condition_I3_witness": json_real(ana.condition_I3_witness),
        "nonsingular": ana.nonsingular,
        "strictly_nonsingular": ana.strictly_nonsingular,
        "dilation_B": json_real(ana.dilation_B),
    }
