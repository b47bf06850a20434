"""Composition operators T f = f ∘ phi, their Cesàro means, and diagnostics.

Everything is computed exactly on the step/sequence representations:
``apply`` pulls the level decomposition of f back through the symbol's
preimage machinery, Cesàro means accumulate iterates with rational weights,
and the truncated maximal operator is a pointwise max of finitely many
partial averages.  Limits are only ever produced by oracles (orbit averages
for finite permutations); nothing is extrapolated.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .num import INF, Real, fmt_real, json_real
from .rearrange import distribution_at
from .spaces import NormSpec, XiWeight, fundamental_function, norm_eval, xi_seminorm
from .stepfn import (
    AtomSeq,
    MeasFn,
    StepFn,
    abs_fn,
    add,
    linear_combine,
    pointwise_max,
    scale,
    seq,
    subtract,
)
from .symbols import AtomicSymbol, IntervalSymbol, Symbol, _fn_from_pieces


# ---------------------------------------------------------------------------
# The operator itself
# ---------------------------------------------------------------------------


def apply(sym: Symbol, f: MeasFn) -> MeasFn:
    """T f = f ∘ phi, exact.

    For interval symbols each piece of f is pulled back branch-by-branch;
    the preimages of the pieces tile the domain up to null sets, so the
    result is again a step function.  For atomic symbols only finitely many
    indices can disagree with the tail behavior f(j + c)."""
    if f.space != sym.space:
        raise ValueError("function and symbol live on different spaces")
    if isinstance(sym, AtomicSymbol):
        if not isinstance(f, AtomSeq):
            raise ValueError("atomic symbols act on atom sequences")
        return _apply_atomic(sym, f)
    if not isinstance(f, StepFn):
        raise ValueError("interval symbols act on step functions")
    return _apply_interval(sym, f)


def _apply_atomic(sym: AtomicSymbol, f: AtomSeq) -> AtomSeq:
    cand = {j for j, _ in sym.table}
    if sym.shift is None:
        cand.update(range(sym.space.count))
    else:
        # off the table phi(j) = j + c, so only pullbacks of f's entries
        # can differ from the tail
        for e, _ in f.entries:
            j = e - sym.shift
            if sym.space.valid_index(j):
                cand.add(j)
    entries = [(j, f.value_at(sym.image_of(j))) for j in sorted(cand)]
    return seq(sym.space, entries, tail=f.tail)


def _apply_interval(sym: IntervalSymbol, f: StepFn) -> StepFn:
    pieces = []
    for br in sym.branches:
        for a, b, v in f.pieces():
            if v == 0:
                continue
            got = br.preimage_interval(a, b)
            if got is not None:
                pieces.append((got[0], got[1], v))
    return _fn_from_pieces(sym.space, pieces)


def iterate_apply(sym: Symbol, f: MeasFn, k: int) -> MeasFn:
    """T^k f by k-fold application (the catalog is not closed under
    composition, so powers are never formed symbolically)."""
    if k < 0:
        raise ValueError("iterate count must be >= 0")
    cur = f
    for _ in range(k):
        cur = apply(sym, cur)
    return cur


# ---------------------------------------------------------------------------
# Cesàro means
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CesaroTrajectory:
    symbol: Symbol
    seed: MeasFn
    schedule: tuple[int, ...]
    means: tuple[tuple[int, MeasFn], ...]

    def mean(self, n: int) -> MeasFn:
        for m, g in self.means:
            if m == n:
                return g
        raise KeyError(n)


def cesaro(sym: Symbol, f: MeasFn, n: int) -> MeasFn:
    """(1/n) sum_{i<n} T^i f, exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if _is_finite_permutation(sym):
        return _permutation_cesaro(sym, f, n)
    iterates = [f]
    cur = f
    for _ in range(n - 1):
        cur = apply(sym, cur)
        iterates.append(cur)
    w = Fraction(1, n)
    return linear_combine([w] * n, iterates)


def cesaro_schedule(sym: Symbol, f: MeasFn, schedule: Sequence[int]) -> CesaroTrajectory:
    """Means C_n f along an increasing schedule, sharing iterates."""
    ns = [int(n) for n in schedule]
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])) or ns[0] < 1:
        raise ValueError("schedule must be strictly increasing and positive")
    if _is_finite_permutation(sym):
        means = tuple((n, _permutation_cesaro(sym, f, n)) for n in ns)
        return CesaroTrajectory(sym, f, tuple(ns), means)
    wanted = set(ns)
    out = []
    running = None
    buffer = [f]
    cur = f
    for n in range(1, ns[-1] + 1):
        if n > 1:
            cur = apply(sym, cur)
            buffer.append(cur)
        if n in wanted:
            # fold the buffered iterates into the running sum only at
            # snapshots, so a dense schedule costs one sweep per snapshot
            # instead of one per step
            parts = ([running] if running is not None else []) + buffer
            running = parts[0] if len(parts) == 1 else linear_combine([1] * len(parts), parts)
            buffer = []
            out.append((n, scale(Fraction(1, n), running)))
    return CesaroTrajectory(sym, f, tuple(ns), tuple(out))


def _is_finite_permutation(sym: Symbol) -> bool:
    return isinstance(sym, AtomicSymbol) and sym.is_permutation()


def _cycles(sym: AtomicSymbol) -> list[list[int]]:
    seen = set()
    cycles = []
    for start in range(sym.space.count):
        if start in seen:
            continue
        cyc = []
        j = start
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = sym.image_of(j)
        cycles.append(cyc)
    return cycles


def _permutation_cesaro(sym: AtomicSymbol, f: AtomSeq, n: int) -> AtomSeq:
    """Closed form along cycles: the orbit of j is periodic, so the n-term
    ergodic sum is q full cycle sums plus a prefix (n = qL + r)."""
    values = {}
    for cyc in _cycles(sym):
        L = len(cyc)
        vals = [f.value_at(j) for j in cyc]
        total = sum(vals)
        prefix = [Fraction(0)]
        for v in vals + vals:  # doubled, so any wrap-around prefix is a diff
            prefix.append(prefix[-1] + v)
        q, r = divmod(n, L)
        for m, j in enumerate(cyc):
            s = q * total + (prefix[m + r] - prefix[m])
            values[j] = s * Fraction(1, n)
    return seq(sym.space, sorted(values.items()))


def permutation_limit(sym: AtomicSymbol, f: AtomSeq) -> AtomSeq:
    """The mean-ergodic limit for a finite permutation: orbit averages."""
    _require_permutation(sym)
    if f.space != sym.space:
        raise ValueError("function and symbol live on different spaces")
    values = {}
    for cyc in _cycles(sym):
        avg = sum(f.value_at(j) for j in cyc) * Fraction(1, len(cyc))
        for j in cyc:
            values[j] = avg
    return seq(sym.space, sorted(values.items()))


def _require_permutation(sym: Symbol) -> None:
    if not _is_finite_permutation(sym):
        raise ValueError("needs a bijective table on a finite atomic space")


@dataclass(frozen=True)
class Decomposition:
    """f = kernel_part + range_part with kernel_part sigma-invariant and
    range_part = (I - T) witness."""

    kernel_part: AtomSeq
    range_part: AtomSeq
    witness: AtomSeq
    exact: bool


def decomposition_check(sym: AtomicSymbol, f: AtomSeq) -> Decomposition:
    """Split f against Ker(I - T) ⊕ Ran(I - T), solved cycle-by-cycle.

    The range part has zero cycle averages, so g(sigma(j)) = g(j) - r(j)
    closes up around every cycle when anchored at g(start) = 0."""
    _require_permutation(sym)
    kernel = permutation_limit(sym, f)
    rng = subtract(f, kernel)
    g = {}
    for cyc in _cycles(sym):
        g[cyc[0]] = Fraction(0)
        for j in cyc[:-1]:
            g[sym.image_of(j)] = g[j] - rng.value_at(j)
    witness = seq(sym.space, sorted(g.items()))
    exact = (
        apply(sym, kernel) == kernel
        and subtract(witness, apply(sym, witness)) == rng
    )
    return Decomposition(kernel, rng, witness, exact)


# ---------------------------------------------------------------------------
# Truncated maximal operator
# ---------------------------------------------------------------------------


def maximal_truncated(sym: Symbol, f: MeasFn, K: int) -> MeasFn:
    """max_{1<=n<=K} (1/n) sum_{i<n} |T^i f|, exact on the common refinement.

    |T^i f| = T^i |f| because T is positive, so one pass over the iterates
    of |f| suffices."""
    if K < 1:
        raise ValueError("truncation K must be >= 1")
    g = abs_fn(f)
    best = g
    running = g
    cur = g
    for n in range(2, K + 1):
        cur = apply(sym, cur)
        running = add(running, cur)
        best = pointwise_max(best, scale(Fraction(1, n), running))
    return best


def weak_type_ratio(
    sym: Symbol,
    f: MeasFn,
    K: int,
    spec: NormSpec,
    s_grid: Sequence[Real],
) -> Real:
    """max over the grid of s · phi_X(mu({T#_K f > s})) / ||f||_X."""
    if isinstance(f, AtomSeq):
        nonneg = all(v >= 0 for _, v in f.entries) and f.tail >= 0
    else:
        nonneg = all(v >= 0 for v in f.vals)
    if not nonneg:
        raise ValueError("weak-type ratios are defined for nonnegative f")
    denom = norm_eval(spec, f)
    if denom == 0:
        raise ValueError("zero-norm function")
    if denom == INF:
        raise ValueError("needs a finite-norm function")
    m = maximal_truncated(sym, f, K)
    best: Real = Fraction(0)
    for s in s_grid:
        if not s > 0:
            raise ValueError("levels must be positive")
        mass = distribution_at(m, s)
        if mass == 0:
            continue
        best = max(best, s * fundamental_function(spec, mass) / denom)
    return best


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ErgodicReport:
    columns: tuple[str, ...]
    rows: tuple[tuple[Real, ...], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([fmt_real(x) for x in row])
        return buf.getvalue()

    def to_json_obj(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [[json_real(x) for x in row] for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True) + "\n"

    def column(self, name: str) -> list[Real]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def spec_label(spec: Union[NormSpec, XiWeight]) -> str:
    from .spaces import Lorentz, Lp, MarcStrong, MarcWeak, WeakLp
    from .spaces import LogClip, Power, StepApprox

    def phi_label(phi):
        if isinstance(phi, Power):
            return f"t^{fmt_real(phi.alpha)}"
        if isinstance(phi, LogClip):
            return "logclip"
        if isinstance(phi, StepApprox):
            return f"steps{len(phi.knots)}"
        return type(phi).__name__

    if isinstance(spec, Lp):
        return f"L{fmt_real(spec.p)}"
    if isinstance(spec, Lorentz):
        return f"Lorentz({fmt_real(spec.p)},{fmt_real(spec.q)})"
    if isinstance(spec, WeakLp):
        return f"weak-L{fmt_real(spec.p)}"
    if isinstance(spec, MarcWeak):
        return f"m[{phi_label(spec.phi)}]"
    if isinstance(spec, MarcStrong):
        return f"M[{phi_label(spec.phi)}]"
    if isinstance(spec, XiWeight):
        return "xi"
    raise TypeError(f"unlabelled spec {spec!r}")


def convergence_report(
    sym: Symbol,
    f: MeasFn,
    specs: Sequence[NormSpec],
    weights: Sequence[XiWeight],
    schedule: Sequence[int],
    limit_oracle: Optional[MeasFn] = None,
    sample_points: Sequence[Real] = (),
) -> ErgodicReport:
    """Norm/seminorm values of C_n f along the schedule, plus distances to a
    supplied limit and pointwise samples; deterministic."""
    traj = cesaro_schedule(sym, f, schedule)
    cols = ["n"]
    cols += [spec_label(s) for s in specs]
    cols += [f"xi{i}" for i in range(len(weights))]
    if limit_oracle is not None:
        cols += [f"dist[{spec_label(s)}]" for s in specs]
    cols += [f"at[{fmt_real(p)}]" for p in sample_points]
    rows = []
    for n, mean in traj.means:
        row: list[Real] = [Fraction(n)]
        for s in specs:
            row.append(norm_eval(s, mean))
        for w in weights:
            row.append(xi_seminorm(w, mean))
        if limit_oracle is not None:
            diff = subtract(mean, limit_oracle)
            for s in specs:
                row.append(norm_eval(s, diff))
        for p in sample_points:
            row.append(mean.value_at(p))
        rows.append(tuple(row))
    return ErgodicReport(tuple(cols), tuple(rows))
