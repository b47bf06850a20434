"""Step functions and finitely-described sequences: the carrier for everything.

A ``StepFn`` is piecewise constant on its Lebesgue space: interior cut points
split the domain into half-open pieces, the first and last of which may be
infinite rays (values there are the "tails").  An ``AtomSeq`` stores a
sequence by its finitely many exceptional entries plus a default value (the
default may be nonzero only over N).  Values stay ``Fraction`` whenever the
inputs are rational, so identities like canonical equality after a linear
combination are exact, not epsilon-true.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .num import INF, NEG_INF, Real, as_real, is_finite
from .space import (
    ATOMIC_N,
    AtomicSet,
    IntervalSet,
    MeasureSpace,
)


class UndefinedIntegralError(ValueError):
    """Raised when an integral is a genuine inf - inf."""


@dataclass(frozen=True)
class StepFn:
    """Canonical piecewise-constant function on a Lebesgue space.

    ``cuts`` are strictly increasing points in the open interior of the
    domain; ``vals`` has one more element than ``cuts`` and lists the value on
    each piece left to right.  Adjacent pieces never share a value.
    """

    space: MeasureSpace
    cuts: tuple[Real, ...]
    vals: tuple[Real, ...]

    def __post_init__(self):
        if self.space.is_atomic:
            raise ValueError("StepFn needs a Lebesgue space")
        if len(self.vals) != len(self.cuts) + 1:
            raise ValueError("need exactly len(cuts)+1 piece values")
        left, right = self.space.domain
        prev = None
        for c in self.cuts:
            if not (left < c < right):
                raise ValueError(f"cut {c} outside the open domain interior")
            if prev is not None and not prev < c:
                raise ValueError("cuts must be strictly increasing")
            prev = c
        for v in self.vals:
            if not is_finite(v):
                raise ValueError("piece values must be finite")
        for a, b in zip(self.vals, self.vals[1:]):
            if a == b:
                raise ValueError("not canonical: adjacent pieces share a value")

    def value_at(self, x) -> Real:
        left, right = self.space.domain
        if not (left <= x < right):
            raise ValueError(f"{x} outside the domain")
        return self.vals[bisect_right(self.cuts, x)]

    def pieces(self):
        """Yield (a, b, value) over the whole domain, tails included."""
        left, right = self.space.domain
        bounds = (left,) + self.cuts + (right,)
        for i, v in enumerate(self.vals):
            yield bounds[i], bounds[i + 1], v

    def support_bound(self) -> Real:
        """Supremum of |f|'s support (right-tail value 0 assumed checked by caller)."""
        left, right = self.space.domain
        if self.vals[-1] != 0:
            return right
        return self.cuts[-1] if self.cuts else left


def step(space: MeasureSpace, cuts, vals) -> StepFn:
    """Build a StepFn, canonicalizing adjacent equal values."""
    cuts = [as_real(c) for c in cuts]
    vals = [as_real(v) for v in vals]
    if len(vals) != len(cuts) + 1:
        raise ValueError("need exactly len(cuts)+1 piece values")
    ccuts: list[Real] = []
    cvals: list[Real] = [vals[0]]
    for c, v in zip(cuts, vals[1:]):
        if v == cvals[-1]:
            continue
        ccuts.append(c)
        cvals.append(v)
    return StepFn(space, tuple(ccuts), tuple(cvals))


def constant(space: MeasureSpace, v) -> StepFn:
    return StepFn(space, (), (as_real(v),))


@dataclass(frozen=True)
class AtomSeq:
    """Sequence over an atomic space: finitely many entries over a default.

    ``tail`` is the value at every index not listed in ``entries``; it may be
    nonzero only over N (the only atomic catalog space where a constant
    nonzero tail arises).  Entries never equal the tail.
    """

    space: MeasureSpace
    entries: tuple[tuple[int, Real], ...]
    tail: Real = field(default=Fraction(0))

    def __post_init__(self):
        if not self.space.is_atomic:
            raise ValueError("AtomSeq needs an atomic space")
        if self.tail != 0 and self.space.kind != ATOMIC_N:
            raise ValueError("nonzero tail is only supported over N")
        prev = None
        for j, v in self.entries:
            if not self.space.valid_index(j):
                raise ValueError(f"index {j} outside the space's range")
            if prev is not None and j <= prev:
                raise ValueError("entries must be sorted by index")
            if v == self.tail:
                raise ValueError("entry equal to the tail value is not canonical")
            if not is_finite(v):
                raise ValueError("values must be finite")
            prev = j

    def value_at(self, j: int) -> Real:
        if not self.space.valid_index(j):
            raise ValueError(f"index {j} outside the space's range")
        for k, v in self.entries:
            if k == j:
                return v
        return self.tail

    def as_dict(self) -> dict[int, Real]:
        return dict(self.entries)


def seq(space: MeasureSpace, entries, tail=0) -> AtomSeq:
    """Build an AtomSeq from a dict/pairs, dropping entries equal to the tail."""
    tail = as_real(tail)
    items = entries.items() if isinstance(entries, dict) else entries
    cleaned = sorted((int(j), as_real(v)) for j, v in items)
    return AtomSeq(space, tuple((j, v) for j, v in cleaned if v != tail), tail)


def seq_from_values(space: MeasureSpace, values) -> AtomSeq:
    """AtomSeq from a dense list starting at index 0."""
    return seq(space, list(enumerate(as_real(v) for v in values)))


MeasFn = Union[StepFn, AtomSeq]


# ---------------------------------------------------------------------------
# Construction from sets
# ---------------------------------------------------------------------------


def indicator(space: MeasureSpace, E) -> MeasFn:
    """Characteristic function of a catalog set, canonical."""
    if E.space != space:
        raise ValueError("set does not belong to this space")
    if isinstance(E, IntervalSet):
        cuts: list[Real] = []
        vals: list[Real] = [Fraction(0)]
        left, right = space.domain
        for a, b in E.intervals:
            if a == left:
                vals[0] = Fraction(1)
            else:
                cuts.append(a)
                vals.append(Fraction(1))
            if b < right:
                cuts.append(b)
                vals.append(Fraction(0))
        return step(space, cuts, vals)
    if isinstance(E, AtomicSet):
        if E.cofinite:
            if space.kind != ATOMIC_N:
                raise ValueError("co-finite indicator needs a nonzero tail over N")
            return seq(space, {j: 0 for j in E.atoms}, tail=1)
        return seq(space, {j: 1 for j in E.atoms})
    raise TypeError("not a catalog set")


# ---------------------------------------------------------------------------
# Linear combinations (event-sweep, exact)
# ---------------------------------------------------------------------------


def linear_combine(coeffs, fns) -> MeasFn:
    """Sum of c_i * f_i in canonical form.

    Step functions are combined by one sweep over the union of their cuts, so
    combining n translates of an indicator costs O(total cuts * log) rather
    than O(n^2).
    """
    if len(coeffs) != len(fns) or not fns:
        raise ValueError("need equally many (>=1) coefficients and functions")
    coeffs = [as_real(c) for c in coeffs]
    sp = fns[0].space
    for f in fns:
        if f.space != sp:
            raise ValueError("functions live on different spaces")
    if isinstance(fns[0], AtomSeq):
        tail = sum(c * f.tail for c, f in zip(coeffs, fns))
        acc: dict[int, Real] = {}
        for c, f in zip(coeffs, fns):
            base = c * f.tail
            for j, v in f.entries:
                acc[j] = acc.get(j, Fraction(0)) + c * v - base
        # acc[j] holds the deviation from the summed tail at j
        return seq(sp, {j: tail + d for j, d in acc.items()}, tail=tail)
    # step functions: collect jump events
    base = sum(c * f.vals[0] for c, f in zip(coeffs, fns))
    jumps: dict[Real, Real] = {}
    for c, f in zip(coeffs, fns):
        for cut, lo, hi in zip(f.cuts, f.vals, f.vals[1:]):
            if cut in jumps:
                jumps[cut] += c * (hi - lo)
            else:
                jumps[cut] = c * (hi - lo)
    cuts = sorted(jumps)
    vals = [base]
    for cut in cuts:
        vals.append(vals[-1] + jumps[cut])
    return step(sp, cuts, vals)


def scale(c, f: MeasFn) -> MeasFn:
    return linear_combine([c], [f])


def add(f: MeasFn, g: MeasFn) -> MeasFn:
    return linear_combine([1, 1], [f, g])


def subtract(f: MeasFn, g: MeasFn) -> MeasFn:
    return linear_combine([1, -1], [f, g])


# ---------------------------------------------------------------------------
# Pointwise operations via common refinement
# ---------------------------------------------------------------------------


def _refine(f: StepFn, g: StepFn):
    """Yield (a, b, fv, gv) over the union partition."""
    cuts = sorted(set(f.cuts) | set(g.cuts))
    left, right = f.space.domain
    bounds = [left] + cuts + [right]
    fi = gi = 0
    for a, b in zip(bounds, bounds[1:]):
        while fi < len(f.cuts) and f.cuts[fi] <= a:
            fi += 1
        while gi < len(g.cuts) and g.cuts[gi] <= a:
            gi += 1
        yield a, b, f.vals[fi], g.vals[gi]


def _seq_pairs(f: AtomSeq, g: AtomSeq):
    idx = sorted({j for j, _ in f.entries} | {j for j, _ in g.entries})
    fd, gd = f.as_dict(), g.as_dict()
    for j in idx:
        yield j, fd.get(j, f.tail), gd.get(j, g.tail)


def pointwise_leq(f: MeasFn, g: MeasFn) -> bool:
    """Exact f <= g everywhere (union partition / union index set)."""
    if f.space != g.space:
        raise ValueError("functions live on different spaces")
    if isinstance(f, AtomSeq):
        if f.tail > g.tail:
            return False
        return all(fv <= gv for _, fv, gv in _seq_pairs(f, g))
    return all(fv <= gv for _, _, fv, gv in _refine(f, g))


def pointwise_map(op, f: MeasFn, g: MeasFn) -> MeasFn:
    """Binary pointwise operation on a common refinement, canonical."""
    if f.space != g.space:
        raise ValueError("functions live on different spaces")
    if isinstance(f, AtomSeq):
        tail = op(f.tail, g.tail)
        ent = {j: op(fv, gv) for j, fv, gv in _seq_pairs(f, g)}
        return seq(f.space, ent, tail=tail)
    cuts, vals = [], []
    for a, b, fv, gv in _refine(f, g):
        if a not in (NEG_INF,) and vals:
            cuts.append(a)
        vals.append(op(fv, gv))
    return step(f.space, cuts, vals)


def pointwise_max(f: MeasFn, g: MeasFn) -> MeasFn:
    return pointwise_map(max, f, g)


def pointwise_mul(f: MeasFn, g: MeasFn) -> MeasFn:
    return pointwise_map(lambda a, b: a * b, f, g)


def abs_fn(f: MeasFn) -> MeasFn:
    if isinstance(f, AtomSeq):
        return seq(f.space, {j: abs(v) for j, v in f.entries}, tail=abs(f.tail))
    return step(f.space, f.cuts, [abs(v) for v in f.vals])


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------


def integrate(f: MeasFn) -> Real:
    """Exact integral against the space's measure.

    A nonzero value on an infinite piece contributes a signed infinity; when
    both signs occur the integral is undefined and raises.
    """
    pos_inf = neg_inf = False
    total: Real = Fraction(0)
    if isinstance(f, AtomSeq):
        if f.tail > 0:
            pos_inf = True
        elif f.tail < 0:
            neg_inf = True
        total = f.space.atom_mass * sum((v for _, v in f.entries), Fraction(0))
    else:
        for a, b, v in f.pieces():
            if v == 0:
                continue
            if a == NEG_INF or b == INF:
                if v > 0:
                    pos_inf = True
                else:
                    neg_inf = True
            else:
                total += v * (b - a)
    if pos_inf and neg_inf:
        raise UndefinedIntegralError("integral is inf - inf")
    if pos_inf:
        return INF
    if neg_inf:
        return NEG_INF
    return total
