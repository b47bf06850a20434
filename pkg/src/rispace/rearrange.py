"""Distribution functions, non-increasing rearrangements, and comparisons.

The rearrangement of a catalog function is computed exactly: collect the
finitely many levels of |f|, sort them in descending order, and lay them out
left to right on [0, infinity) with their measures as widths.  A positive
level of infinite measure becomes the rearrangement's tail value (the
function then fails the absolutely-continuous-rearrangement property).

Hardy-Littlewood and Hardy-Littlewood-Polya comparisons are decided exactly:
both sides are piecewise linear in t, so checking the union of breakpoints
plus the terminal slopes is a complete decision procedure, not a sampling
heuristic.
"""

from __future__ import annotations

from fractions import Fraction

from .num import INF, Real, as_real
from .space import MeasureSpace, halfline
from .stepfn import (
    AtomSeq,
    MeasFn,
    StepFn,
    abs_fn,
    integrate,
    pointwise_mul,
    step,
)

_HALFLINE = halfline()


def distribution_at(f: MeasFn, s) -> Real:
    """mu({|f| > s}), exactly."""
    s = as_real(s)
    if s < 0:
        raise ValueError("distribution function needs s >= 0")
    if isinstance(f, AtomSeq):
        if abs(f.tail) > s:
            return INF
        n = sum(1 for _, v in f.entries if abs(v) > s)
        return f.space.atom_mass * n
    total: Real = Fraction(0)
    for a, b, v in f.pieces():
        if abs(v) > s:
            if b == INF or a == -INF:
                return INF
            total += b - a
    return total


def _levels(f: MeasFn) -> dict[Real, Real]:
    """Map |value| -> total measure of that level set, skipping level 0."""
    levels: dict[Real, Real] = {}
    if isinstance(f, AtomSeq):
        for _, v in f.entries:
            if v != 0:
                key = abs(v)
                levels[key] = levels.get(key, Fraction(0)) + f.space.atom_mass
        if f.tail != 0:
            levels[abs(f.tail)] = INF
        return levels
    for a, b, v in f.pieces():
        if v == 0:
            continue
        key = abs(v)
        width = INF if (b == INF or a == -INF) else b - a
        prev = levels.get(key, Fraction(0))
        levels[key] = INF if (prev == INF or width == INF) else prev + width
    return levels


def rearrangement(f: MeasFn) -> StepFn:
    """The non-increasing rearrangement f* as a StepFn on the half-line."""
    levels = _levels(f)
    cuts: list[Real] = []
    vals: list[Real] = []
    pos: Real = Fraction(0)
    for v in sorted(levels, reverse=True):
        m = levels[v]
        if m == INF:
            vals.append(v)  # this level fills the rest of the half-line
            return step(_HALFLINE, cuts, vals)
        vals.append(v)
        pos = pos + m
        cuts.append(pos)
    vals.append(Fraction(0))
    return step(_HALFLINE, cuts, vals)


def is_rearranged(f: MeasFn) -> bool:
    """True when f is already a nonnegative nonincreasing StepFn on [0, inf)."""
    if not isinstance(f, StepFn) or f.space != _HALFLINE:
        return False
    if any(v < 0 for v in f.vals):
        return False
    return all(a > b for a, b in zip(f.vals, f.vals[1:]))


def hardy_integral(f: MeasFn, t) -> Real:
    """Exact integral of f* over [0, t] (t = inf allowed)."""
    t = as_real(t) if t != INF else INF
    if not t > 0:
        raise ValueError("hardy_integral needs t > 0")
    return _hardy_at(rearrangement(f), t)


def _hardy_at(r: StepFn, t) -> Real:
    total: Real = Fraction(0)
    for a, b, v in r.pieces():
        if t <= a:
            break
        hi = min(b, t)
        if v != 0:
            if hi == INF:
                return INF
            total += v * (hi - a)
    return total


def hlp_leq(f: MeasFn, g: MeasFn) -> bool:
    """Exact Hardy-Littlewood-Polya comparison: integral of f* over [0,t]
    <= same for g*, for every t > 0.

    Both Hardy integrals are piecewise linear with breakpoints at the cuts of
    the two rearrangements, so it suffices to compare at the union of cuts
    and to compare the terminal slopes (the tail values).
    """
    rf, rg = rearrangement(f), rearrangement(g)
    if rf.vals[-1] > rg.vals[-1]:
        return False
    for t in sorted(set(rf.cuts) | set(rg.cuts)):
        if _hardy_at(rf, t) > _hardy_at(rg, t):
            return False
    return True


def equimeasurable(f: MeasFn, g: MeasFn) -> bool:
    return rearrangement(f) == rearrangement(g)


def hardy_littlewood_pair(f: MeasFn, g: MeasFn) -> tuple[Real, Real]:
    """(integral of |fg| d mu, integral of f* g* d lambda) — both exact.

    The first never exceeds the second on a resonant space.
    """
    if f.space != g.space:
        raise ValueError("functions live on different spaces")
    lhs = integrate(abs_fn(pointwise_mul(f, g)))
    rhs = integrate(pointwise_mul(rearrangement(f), rearrangement(g)))
    return lhs, rhs


def dilate(f: StepFn, t) -> StepFn:
    """Dilation (D_t f)(s) = f(t s) for f on the half-line; exact cuts."""
    t = as_real(t)
    if not t > 0:
        raise ValueError("dilation parameter must be positive")
    if not isinstance(f, StepFn) or f.space != _HALFLINE:
        raise ValueError("dilate needs a StepFn on the half-line")
    return StepFn(_HALFLINE, tuple(c / t for c in f.cuts), f.vals)


def is_acr(f: MeasFn) -> bool:
    """Absolutely continuous rearrangement: f*(t) -> 0 as t -> infinity."""
    return rearrangement(f).vals[-1] == 0
