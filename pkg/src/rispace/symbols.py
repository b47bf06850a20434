"""Measurable self-maps of the catalog spaces, with exact preimages.

Two families:

* ``AtomicSymbol`` — a finite lookup table on low indices plus an affine
  index shift ``j -> j + c`` everywhere else.  Preimages are computed by
  counting, forward orbits by iteration over a window wide enough that
  everything beyond it behaves like the pure shift.

* ``IntervalSymbol`` — finitely many strictly monotone branches whose
  domains partition the carrier.  The branch forms are a closed catalog
  (affine maps, t^n and 1+t^n on the unit interval, the affine tail
  n(t-1)+2, and exp(1-1/t)) with closed-form inverses, so the preimage of a
  half-open interval is again a finite union of intervals with closed-form
  endpoints.  For an order-reversing affine branch the returned half-open
  interval differs from the true preimage by at most two endpoints, a null
  set; all measures are unaffected.

Iterates are always handled operator-side (apply the preimage n times);
branch forms are never composed symbolically, since the catalog is not
closed under composition.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .num import INF, NEG_INF, Real, as_real, is_finite, log_real, nth_root
from .space import (
    ATOMIC_FINITE,
    ATOMIC_N,
    ATOMIC_Z,
    AtomicSet,
    IntervalSet,
    MeasureSpace,
    _normalize_intervals,
)
from .stepfn import StepFn, linear_combine, step


# ---------------------------------------------------------------------------
# Branch forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    """t -> alpha t + beta, alpha != 0."""

    alpha: Real
    beta: Real

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_real(self.alpha))
        object.__setattr__(self, "beta", as_real(self.beta))
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")


@dataclass(frozen=True)
class PowerOnUnit:
    """t -> t^n on [0, 1), n >= 2."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("power must be >= 2")


@dataclass(frozen=True)
class ShiftedPower:
    """t -> 1 + t^n on [0, 1), n >= 2."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("power must be >= 2")


@dataclass(frozen=True)
class AffineTail:
    """t -> n (t - 1) + 2 on [1, inf), n >= 1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("slope must be >= 1")


@dataclass(frozen=True)
class ExpRecip:
    """t -> exp(1 - 1/t) on [0, 1), with the null convention phi(0) = 0."""


BranchForm = Union[Affine, PowerOnUnit, ShiftedPower, AffineTail, ExpRecip]

_PINNED_DOMAINS = {
    PowerOnUnit: (Fraction(0), Fraction(1)),
    ShiftedPower: (Fraction(0), Fraction(1)),
    AffineTail: (Fraction(1), INF),
    ExpRecip: (Fraction(0), Fraction(1)),
}


@dataclass(frozen=True)
class Branch:
    lo: Real
    hi: Real
    form: BranchForm

    def __post_init__(self):
        lo = self.lo if self.lo in (INF, NEG_INF) else as_real(self.lo)
        hi = self.hi if self.hi in (INF, NEG_INF) else as_real(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not lo < hi:
            raise ValueError("branch domain is empty")
        pinned = _PINNED_DOMAINS.get(type(self.form))
        if pinned is not None and (lo, hi) != pinned:
            raise ValueError(
                f"{type(self.form).__name__} is defined on [{pinned[0]}, {pinned[1]})"
            )

    @property
    def increasing(self) -> bool:
        return not (isinstance(self.form, Affine) and self.form.alpha < 0)

    def image(self) -> tuple[Real, Real]:
        """Endpoints (lo, hi) of the image interval, null sets ignored."""
        f = self.form
        if isinstance(f, Affine):
            a = _affine_at(f, self.lo)
            b = _affine_at(f, self.hi)
            return (a, b) if f.alpha > 0 else (b, a)
        if isinstance(f, PowerOnUnit):
            return (Fraction(0), Fraction(1))
        if isinstance(f, ShiftedPower):
            return (Fraction(1), Fraction(2))
        if isinstance(f, AffineTail):
            return (Fraction(2), INF)
        return (Fraction(0), Fraction(1))  # ExpRecip

    def inverse_at(self, y) -> Real:
        """The branch's inverse at y (y inside the closed image)."""
        f = self.form
        if y == INF:
            if isinstance(f, Affine):
                return INF if f.alpha > 0 else NEG_INF
            return INF
        if y == NEG_INF:
            if isinstance(f, Affine):
                return NEG_INF if f.alpha > 0 else INF
            return NEG_INF
        if isinstance(f, Affine):
            return (y - f.beta) / f.alpha
        if isinstance(f, PowerOnUnit):
            return nth_root(y, f.n)
        if isinstance(f, ShiftedPower):
            return nth_root(y - 1, f.n)
        if isinstance(f, AffineTail):
            return (y - 2) / Fraction(f.n) + 1
        # ExpRecip: invert y = exp(1 - 1/t)
        if y == 0:
            return Fraction(0)
        if y == 1:
            return Fraction(1)
        return 1.0 / (1.0 - log_real(y))

    def preimage_interval(self, u, v):
        """Preimage of [u, v) within this branch, as (a, b) or None."""
        img_lo, img_hi = self.image()
        lo_y = max(u, img_lo)
        hi_y = min(v, img_hi)
        if not lo_y < hi_y:
            return None
        if self.increasing:
            a, b = self.inverse_at(lo_y), self.inverse_at(hi_y)
        else:
            a, b = self.inverse_at(hi_y), self.inverse_at(lo_y)
        a = max(a, self.lo)
        b = min(b, self.hi)
        if not a < b:
            return None
        return (a, b)


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalSymbol:
    space: MeasureSpace
    branches: tuple[Branch, ...]

    def __post_init__(self):
        if self.space.is_atomic:
            raise ValueError("IntervalSymbol needs a Lebesgue space")
        left, right = self.space.domain
        cursor = left
        for br in self.branches:
            if br.lo != cursor:
                raise ValueError("branch domains must partition the space's domain")
            cursor = br.hi
            lo_i, hi_i = br.image()
            if lo_i < left or hi_i > right:
                raise ValueError("branch image leaves the space")
            if not br.increasing and hi_i == right and right != INF:
                # a decreasing affine branch attains its sup at the left
                # domain endpoint, and the right space endpoint is excluded
                raise ValueError("branch image leaves the space")
        if cursor != right:
            raise ValueError("branch domains must partition the space's domain")


@dataclass(frozen=True)
class AtomicSymbol:
    space: MeasureSpace
    table: tuple[tuple[int, int], ...]
    shift: int | None = None

    def __post_init__(self):
        if not self.space.is_atomic:
            raise ValueError("AtomicSymbol needs an atomic space")
        tbl = tuple(sorted((int(j), int(k)) for j, k in self.table))
        object.__setattr__(self, "table", tbl)
        seen = set()
        for j, k in tbl:
            if j in seen:
                raise ValueError(f"duplicate table entry for index {j}")
            seen.add(j)
            if not (self.space.valid_index(j) and self.space.valid_index(k)):
                raise ValueError("table entry outside the index range")
        if self.space.kind == ATOMIC_FINITE:
            if self.shift is not None:
                raise ValueError("finite atomic symbols have no shift rule")
            if len(seen) != self.space.count:
                raise ValueError("table must cover every atom of a finite space")
        else:
            if self.shift is None:
                raise ValueError("need a shift rule off the table window")
            if self.space.kind == ATOMIC_N and self.shift < 0:
                for j in range(-self.shift):
                    if j not in seen:
                        raise ValueError(
                            f"index {j} would map to the negative index {j + self.shift}"
                        )

    def as_dict(self) -> dict[int, int]:
        return dict(self.table)

    def image_of(self, j: int) -> int:
        if not self.space.valid_index(j):
            raise ValueError(f"index {j} outside the space's range")
        for jj, k in self.table:
            if jj == j:
                return k
        return j + self.shift

    def is_permutation(self) -> bool:
        if self.space.kind != ATOMIC_FINITE:
            return False
        return len({k for _, k in self.table}) == self.space.count


Symbol = Union[AtomicSymbol, IntervalSymbol]


# ---------------------------------------------------------------------------
# Preimages
# ---------------------------------------------------------------------------


def preimage(sym: Symbol, E):
    """Exact phi^{-1}(E) inside the catalog set class."""
    if E.space != sym.space:
        raise ValueError("set does not belong to the symbol's space")
    if isinstance(sym, AtomicSymbol):
        if isinstance(E, AtomicSet) and E.cofinite:
            return preimage(sym, E.complement()).complement()
        hit = set()
        tbl = sym.as_dict()
        members = E.atoms
        for j, k in sym.table:
            if k in members:
                hit.add(j)
        if sym.shift is not None:
            for s in members:
                j = s - sym.shift
                if sym.space.valid_index(j) and j not in tbl:
                    hit.add(j)
        return AtomicSet(sym.space, frozenset(hit))
    pieces = []
    for u, v in E.intervals:
        for br in sym.branches:
            got = br.preimage_interval(u, v)
            if got is not None:
                pieces.append(got)
    return IntervalSet(sym.space, _normalize_intervals(pieces, allow_overlap=True))


def preimage_measure(sym: Symbol, E) -> Real:
    return preimage(sym, E).measure()


# ---------------------------------------------------------------------------
# Density bookkeeping for interval symbols
# ---------------------------------------------------------------------------

_UNBOUNDED_FORMS = (PowerOnUnit, ShiftedPower, ExpRecip)


def _affine_at(f: Affine, t) -> Real:
    if t == INF:
        return INF if f.alpha > 0 else NEG_INF
    if t == NEG_INF:
        return NEG_INF if f.alpha > 0 else INF
    return f.alpha * t + f.beta


def _affine_like(form: BranchForm):
    """(alpha, beta) when the branch is an affine map, else None."""
    if isinstance(form, Affine):
        return form.alpha, form.beta
    if isinstance(form, AffineTail):
        return Fraction(form.n), Fraction(2 - form.n)
    return None


def _density_at(br: Branch, y) -> Real:
    """|d/dy branch^{-1}(y)| inside the branch's image (limits at endpoints)."""
    f = br.form
    ab = _affine_like(f)
    if ab is not None:
        return 1 / abs(ab[0])
    if isinstance(f, PowerOnUnit):
        if y == 0:
            return INF
        return Fraction(1, f.n) * _real_pow(y, Fraction(1 - f.n, f.n))
    if isinstance(f, ShiftedPower):
        if y == 1:
            return INF
        return Fraction(1, f.n) * _real_pow(y - 1, Fraction(1 - f.n, f.n))
    # ExpRecip: inverse is y -> 1/(1 - log y); derivative 1/(y (1 - log y)^2)
    if y == 0:
        return INF
    u = 1.0 - log_real(y)
    return 1.0 / (float(y) * u * u)


def _real_pow(x: Real, e: Fraction) -> Real:
    from .num import rational_pow

    return rational_pow(x, e)


def measure_bound(sym: Symbol) -> Real:
    """The smallest A with mu(phi^{-1} E) <= A mu(E); +inf when unbounded."""
    if isinstance(sym, AtomicSymbol):
        best = 0
        for k, c in _atomic_counts(sym, 1).items():
            best = max(best, c)
        if sym.space.kind != ATOMIC_FINITE:
            best = max(best, 1)
        return Fraction(best)
    if any(isinstance(br.form, _UNBOUNDED_FORMS) for br in sym.branches):
        # each of these forms has an inverse derivative that blows up inside
        # its image, so no finite A works
        return INF
    best: Real = Fraction(0)
    for _, _, dens in _affine_density_regions(sym):
        best = max(best, dens)
    return best


def lower_bound(sym: Symbol) -> Real:
    """The smallest C with mu(E) <= C mu(phi^{-1} E) over finite-measure E."""
    if isinstance(sym, AtomicSymbol):
        worst = _atomic_min_count(sym, 1)
        return INF if worst == 0 else Fraction(1, worst)
    ess_inf: Real = INF
    for x, y, base, special in _density_regions(sym):
        if special is None:
            here: Real = base
        else:
            here = base + min(_density_at(special, x), _density_at(special, y))
        ess_inf = min(ess_inf, here)
    if ess_inf == 0:
        return INF
    if ess_inf == INF:  # pragma: no cover - cannot happen with nonempty regions
        raise AssertionError("empty region sweep")
    return 1 / ess_inf


def _affine_density_regions(sym: IntervalSymbol):
    """(x, y, density) over the domain for all-affine symbols; exact sweep."""
    for x, y, base, special in _density_regions(sym):
        assert special is None
        yield x, y, base


def _density_regions(sym: IntervalSymbol):
    """Split the domain so each region has a constant affine density plus at
    most one monotone non-affine contribution.

    Yields (x, y, affine_density, non_affine_branch_or_None).  The catalog
    admits at most one non-affine branch per symbol (all three forms claim
    the domain [0, 1)), and each non-affine inverse derivative is monotone on
    the regions produced here (the exp-reciprocal one is split at its
    interior minimum y = 1/e), so region infima sit at region endpoints.
    """
    left, right = sym.space.domain
    points = {left, right}
    specials = []
    for br in sym.branches:
        lo_i, hi_i = br.image()
        points.update((lo_i, hi_i))
        if not _affine_like(br.form):
            specials.append(br)
            if isinstance(br.form, ExpRecip):
                points.add(math.exp(-1.0))
    if len(specials) > 1:  # pragma: no cover - unreachable by domain pinning
        raise AssertionError("catalog admits one non-affine branch")
    pts = sorted(p for p in points if left <= p <= right or p == INF)
    for x, y in zip(pts, pts[1:]):
        if not x < y:
            continue
        base: Real = Fraction(0)
        special = None
        mid_known = None
        for br in sym.branches:
            lo_i, hi_i = br.image()
            if lo_i <= x and y <= hi_i:
                ab = _affine_like(br.form)
                if ab is not None:
                    base += 1 / abs(ab[0])
                else:
                    special = br
        yield x, y, base, special


# ---------------------------------------------------------------------------
# Power bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerBounds:
    per_n: tuple[tuple[int, Real], ...]
    sup: Real
    certified: bool

    def at(self, n: int) -> Real:
        for m, a in self.per_n:
            if m == n:
                return a
        raise KeyError(n)


def _atomic_window(sym: AtomicSymbol, horizon: int) -> tuple[int, int]:
    keys = [j for j, _ in sym.table]
    vals = [k for _, k in sym.table]
    hi = max(keys + vals, default=0) + 1
    lo = min(keys + vals + [0], default=0)
    c = abs(sym.shift or 0)
    pad = horizon * c + hi + 2
    if sym.space.kind == ATOMIC_Z:
        return (lo - pad, hi + pad)
    return (0, hi + pad)


def _atomic_counts(sym: AtomicSymbol, n: int, horizon: int | None = None) -> dict[int, int]:
    """target -> #preimages under phi^n over a complete target range.

    Every valid target outside the returned range has exactly one preimage:
    the window is wide enough that sources beyond it follow the pure shift
    for the whole horizon, and windowed orbits cannot escape the range.
    """
    if sym.space.kind == ATOMIC_FINITE:
        counts: dict[int, int] = {k: 0 for k in range(sym.space.count)}
        pos = list(range(sym.space.count))
        for _ in range(n):
            pos = [sym.image_of(j) for j in pos]
        for t in pos:
            counts[t] += 1
        return counts
    c = sym.shift
    lo_w, hi_w = _atomic_window(sym, horizon if horizon is not None else n)
    pos = list(range(lo_w, hi_w))
    for _ in range(n):
        pos = [sym.image_of(j) for j in pos]
    pad = n * abs(c) + 1
    if sym.space.kind == ATOMIC_N:
        t_lo, t_hi = 0, hi_w + pad
    else:
        t_lo, t_hi = lo_w - pad, hi_w + pad
    counts = {t: 0 for t in range(t_lo, t_hi)}
    for t in pos:
        counts[t] += 1
    # sources outside the window follow the pure shift and contribute one
    # preimage to each target they reach
    for t in range(t_lo, t_hi):
        j = t - n * c
        if (j < lo_w or j >= hi_w) and sym.space.valid_index(j):
            counts[t] += 1
    return counts


def _atomic_min_count(sym: AtomicSymbol, n: int, horizon: int | None = None) -> int:
    counts = _atomic_counts(sym, n, horizon)
    worst = min(counts.values(), default=0)
    if sym.space.kind != ATOMIC_FINITE:
        worst = min(worst, 1)  # generic targets far out get exactly one
    return worst


def atomic_power(sym: AtomicSymbol, k: int) -> AtomicSymbol:
    """The k-fold composition phi^k as an explicit atomic symbol.

    Outside the horizon-k window the orbit never touches the table, so the
    power acts as the pure shift by k*c there; only the window needs entries.
    """
    if k < 0:
        raise ValueError("power must be >= 0")

    def orbit(j: int) -> int:
        for _ in range(k):
            j = sym.image_of(j)
        return j

    if sym.space.kind == ATOMIC_FINITE:
        table = tuple((j, orbit(j)) for j in range(sym.space.count))
        return AtomicSymbol(sym.space, table, None)
    c = sym.shift * k
    lo_w, hi_w = _atomic_window(sym, max(k, 1))
    table = []
    for j in range(lo_w, hi_w):
        t = orbit(j)
        if t != j + c:
            table.append((j, t))
    return AtomicSymbol(sym.space, tuple(table), c)


def power_measure_bound(sym: Symbol, horizon: int, depth: int = 12) -> PowerBounds:
    """A_n for n = 1..horizon.

    Exact for atomic symbols and for all-affine interval symbols (transfer
    density iteration); otherwise a certified lower bound from a dyadic test
    family, flagged by certified=False.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if isinstance(sym, AtomicSymbol):
        # one forward pass shared by every n, so the cost is linear in the
        # horizon rather than quadratic
        per = []
        if sym.space.kind == ATOMIC_FINITE:
            pos = list(range(sym.space.count))
            for n in range(1, horizon + 1):
                pos = [sym.image_of(j) for j in pos]
                per.append((n, Fraction(max(Counter(pos).values()))))
        else:
            c = sym.shift
            lo_w, hi_w = _atomic_window(sym, horizon)
            pos = list(range(lo_w, hi_w))
            for n in range(1, horizon + 1):
                pos = [sym.image_of(j) for j in pos]
                hits = Counter(pos)
                pad = n * abs(c) + 1
                t_lo = 0 if sym.space.kind == ATOMIC_N else lo_w - pad
                a = 1  # beyond the counted range every target has one source
                for t in range(t_lo, hi_w + pad):
                    cnt = hits.get(t, 0)
                    j = t - n * c
                    if (j < lo_w or j >= hi_w) and sym.space.valid_index(j):
                        cnt += 1
                    if cnt > a:
                        a = cnt
                per.append((n, Fraction(a)))
        sup = max(a for _, a in per)
        return PowerBounds(tuple(per), sup, True)
    if all(_affine_like(br.form) for br in sym.branches):
        per = []
        rho = _transfer_density_unit(sym)
        current = rho
        for n in range(1, horizon + 1):
            if n > 1:
                current = _transfer_once(sym, current)
            per.append((n, max(current.vals)))
        sup = max(a for _, a in per)
        return PowerBounds(tuple(per), sup, True)
    per = []
    family = _dyadic_family(sym.space, depth)
    sets = family
    for n in range(1, horizon + 1):
        sets = [preimage(sym, E) for E in sets]
        best: Real = Fraction(0)
        for E0, En in zip(family, sets):
            m0 = E0.measure()
            mn = En.measure()
            if mn == INF:
                best = INF
                break
            if m0 != INF:
                best = max(best, mn / m0)
        per.append((n, best))
    sup = max(a for _, a in per)
    return PowerBounds(tuple(per), sup, False)


def _transfer_density_unit(sym: IntervalSymbol) -> StepFn:
    """Density of E -> mu(phi^{-1} E): sum of 1/|alpha| over covering images."""
    parts = []
    for br in sym.branches:
        alpha, _ = _affine_like(br.form)
        lo_i, hi_i = br.image()
        parts.append(_fn_from_pieces(sym.space, [(lo_i, hi_i, 1 / abs(alpha))]))
    return linear_combine([1] * len(parts), parts)


def _transfer_once(sym: IntervalSymbol, rho: StepFn) -> StepFn:
    """Density of phi^{-(n+1)} from the density rho of phi^{-n}:
    rho'(y) = sum_b rho(inv_b(y)) / |alpha_b| on the image of b."""
    parts = []
    for br in sym.branches:
        alpha, beta = _affine_like(br.form)
        w = 1 / abs(alpha)
        pieces = []
        for a, b, v in rho.pieces():
            lo = max(a, br.lo)
            hi = min(b, br.hi)
            if not lo < hi or v == 0:
                continue
            fa = _affine_at(Affine(alpha, beta), lo)
            fb = _affine_at(Affine(alpha, beta), hi)
            if alpha > 0:
                pieces.append((fa, fb, w * v))
            else:
                pieces.append((fb, fa, w * v))
        if pieces:
            parts.append(_fn_from_pieces(sym.space, pieces))
    if not parts:
        return _fn_from_pieces(sym.space, [])
    return linear_combine([1] * len(parts), parts)


def _fn_from_pieces(sp: MeasureSpace, pieces) -> StepFn:
    """StepFn equal to v on each listed disjoint (a, b) and 0 elsewhere."""
    left, right = sp.domain
    segs = []
    cursor = left
    for a, b, v in sorted(pieces):
        if a > cursor:
            segs.append((cursor, a, Fraction(0)))
        segs.append((a, b, v))
        cursor = b
    if cursor < right:
        segs.append((cursor, right, Fraction(0)))
    cuts = [s[0] for s in segs[1:]]
    vals = [s[2] for s in segs]
    if not vals:
        vals = [Fraction(0)]
    return step(sp, cuts, vals)


def _dyadic_family(sp: MeasureSpace, depth: int):
    """Test intervals concentrated at the catalog's blow-up points 0 and 1."""
    from .space import interval_set

    left, right = sp.domain
    raw = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))]
    for j in range(depth + 1):
        h = Fraction(1, 2**j)
        raw.append((Fraction(0), h))
        raw.append((h / 2, h))
        raw.append((1, 1 + h))
        raw.append((1 + h / 2, 1 + h))
    out = []
    seen = set()
    for a, b in raw:
        a2, b2 = max(a, left), min(b, right)
        if a2 < b2 and (a2, b2) not in seen:
            seen.add((a2, b2))
            out.append(interval_set(sp, [(a2, b2)]))
    return out


# ---------------------------------------------------------------------------
# Condition (I) and the full analysis record
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymbolAnalysis:
    measure_bound: Real
    lower_bound: Real
    power_bounds: PowerBounds
    condition_I1: bool
    condition_I3: bool
    condition_I3_witness: Real
    nonsingular: bool
    strictly_nonsingular: bool
    dilation_B: Real


def check_condition_I(sym: Symbol, horizon: int, depth: int = 12) -> SymbolAnalysis:
    """Assemble the boundedness diagnostics used by the ergodic estimates.

    condition_I3 is verified for iterates up to the horizon: the witness is
    the largest constant C with C mu(E) <= mu(phi^{-i} E) observed across the
    test family (exact ess-inf of the i-step density where the catalog
    permits, dyadic sampling otherwise).
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    A = measure_bound(sym)
    C = lower_bound(sym)
    pb = power_measure_bound(sym, horizon, depth)
    witness: Real = INF
    if isinstance(sym, AtomicSymbol):
        for n in range(1, horizon + 1):
            worst = _atomic_min_count(sym, n, horizon)
            witness = min(witness, Fraction(worst))
            if witness == 0:
                break
    elif all(_affine_like(br.form) for br in sym.branches):
        rho = _transfer_density_unit(sym)
        for n in range(1, horizon + 1):
            if n > 1:
                rho = _transfer_once(sym, rho)
            witness = min(witness, min(rho.vals))
            if witness == 0:
                break
    else:
        family = _dyadic_family(sym.space, depth)
        sets = family
        for n in range(1, horizon + 1):
            sets = [preimage(sym, E) for E in sets]
            for E0, En in zip(family, sets):
                m0, mn = E0.measure(), En.measure()
                if m0 != INF and mn != INF:
                    witness = min(witness, mn / m0)
            if witness == 0:
                break
    if isinstance(sym, AtomicSymbol):
        strictly = _atomic_min_count(sym, 1) >= 1
    else:
        strictly = is_finite(lower_bound(sym))
    B = Fraction(0) if A == INF else min(Fraction(1), 1 / A)
    return SymbolAnalysis(
        measure_bound=A,
        lower_bound=C,
        power_bounds=pb,
        condition_I1=(A <= 1),
        condition_I3=(witness > 0),
        condition_I3_witness=witness,
        nonsingular=True,
        strictly_nonsingular=strictly,
        dilation_B=B,
    )
