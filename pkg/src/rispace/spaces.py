"""Rearrangement-invariant norms, fundamental functions, and xi-seminorms.

Everything is evaluated through the rearrangement, so rearrangement
invariance is structural rather than asserted.  The catalog:

* ``Lp`` (0 < p <= inf) — piecewise power integral of f*;
* ``Lorentz(p, q)`` — ( integral of (t^{1/p} f*(t))^q dt/t )^{1/q}, the
  convention pinned for this package;
* ``WeakLp`` — sup t^{1/p} f*(t);
* ``MarcWeak(Phi)`` — sup Phi(t) f*(t), the largest quasinormed space with
  fundamental function Phi;
* ``MarcStrong(Phi)`` — sup Phi(t) f**(t) with f**(t) = (1/t) int_0^t f*.

Quasiconcave profiles come from a small closed catalog (powers, the
logarithmic clip 1/(1 - log t), piecewise-linear approximations), which is
what lets the Marcinkiewicz suprema be located analytically: on each piece of
f* crossed with each smooth segment of Phi the objective is quasi-convex, so
the supremum sits on the union grid of cut points plus the limits at 0 and
infinity.  No sampling is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .num import INF, Real, as_real, is_finite, log_real, rational_pow
from .rearrange import _hardy_at, is_rearranged, rearrangement
from .space import AtomicSet, MeasureSpace, interval_set
from .stepfn import MeasFn, StepFn, indicator, integrate, pointwise_mul, seq


# ---------------------------------------------------------------------------
# Quasiconcave profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Power:
    """Phi(t) = t^alpha with 0 < alpha <= 1."""

    alpha: Real

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_real(self.alpha))
        if not (0 < self.alpha <= 1):
            raise ValueError("alpha must lie in (0, 1]")


@dataclass(frozen=True)
class LogClip:
    """Phi(0) = 0, Phi(t) = 1/(1 - log t) on (0, 1), Phi(t) = 1 on [1, inf)."""


@dataclass(frozen=True)
class StepApprox:
    """Piecewise-linear profile through (0,0) and the given knots.

    Beyond the last knot the graph continues with ``final_slope``.
    """

    knots: tuple[tuple[Real, Real], ...]
    final_slope: Real

    def __post_init__(self):
        knots = tuple((as_real(t), as_real(v)) for t, v in self.knots)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "final_slope", as_real(self.final_slope))
        if not knots:
            raise ValueError("need at least one knot")
        prev = Fraction(0)
        for t, _ in knots:
            if not t > prev:
                raise ValueError("knot abscissae must be strictly increasing and positive")
            prev = t


QuasiconcaveFn = Union[Power, LogClip, StepApprox]


def phi_at(phi: QuasiconcaveFn, t) -> Real:
    """Phi(t), with t = inf giving the limit value."""
    if t == INF:
        if isinstance(phi, Power):
            return INF
        if isinstance(phi, LogClip):
            return Fraction(1)
        return INF if phi.final_slope > 0 else phi.knots[-1][1]
    t = as_real(t)
    if t < 0:
        raise ValueError("profiles are defined on [0, inf)")
    if t == 0:
        return Fraction(0)
    if isinstance(phi, Power):
        return rational_pow(t, phi.alpha)
    if isinstance(phi, LogClip):
        if t >= 1:
            return Fraction(1)
        return 1.0 / (1.0 - log_real(t))
    prev_t, prev_v = Fraction(0), Fraction(0)
    for kt, kv in phi.knots:
        if t <= kt:
            return prev_v + (kv - prev_v) * (t - prev_t) / (kt - prev_t)
        prev_t, prev_v = kt, kv
    return prev_v + phi.final_slope * (t - prev_t)


def phi_breakpoints(phi: QuasiconcaveFn) -> tuple[Real, ...]:
    """Points where the profile changes analytic form."""
    if isinstance(phi, Power):
        return ()
    if isinstance(phi, LogClip):
        return (Fraction(1),)
    return tuple(t for t, _ in phi.knots)


def quasiconcave_check(phi: QuasiconcaveFn) -> tuple[bool, str]:
    """Verify Phi nondecreasing with Phi(t)/t nonincreasing.

    Power and LogClip carry analytic certificates; StepApprox is checked
    exactly on its grid: a linear segment from (a, Phi(a)) keeps Phi(t)/t
    nonincreasing iff its slope is at most Phi(a)/a.
    """
    if isinstance(phi, Power):
        return True, (
            f"t^alpha with alpha={phi.alpha} in (0,1]: nondecreasing, and "
            "Phi(t)/t = t^(alpha-1) is nonincreasing"
        )
    if isinstance(phi, LogClip):
        return True, (
            "1/(1-log t) increases to 1 on (0,1] and stays 1 after; "
            "Phi(t)/t is continuous and nonincreasing on both segments"
        )
    prev_t, prev_v = Fraction(0), Fraction(0)
    segments = [(t, v) for t, v in phi.knots]
    for i, (t, v) in enumerate(segments):
        if v < 0:
            return False, f"negative value {v} at knot t={t}"
        slope = (v - prev_v) / (t - prev_t)
        if slope < 0:
            return False, f"decreasing segment into knot t={t}"
        if prev_t > 0 and slope > prev_v / prev_t:
            return False, (
                f"Phi(t)/t increases on the segment from t={prev_t}: "
                f"slope {slope} exceeds Phi({prev_t})/{prev_t} = {prev_v / prev_t}"
            )
        prev_t, prev_v = t, v
    if phi.final_slope < 0:
        return False, "decreasing final ray"
    if phi.final_slope > prev_v / prev_t:
        return False, "Phi(t)/t increases on the final ray"
    return True, "grid check passed: nondecreasing and Phi(t)/t nonincreasing"


# ---------------------------------------------------------------------------
# Norm specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lp:
    space: MeasureSpace
    p: Real  # in (0, inf]

    def __post_init__(self):
        p = self.p if self.p == INF else as_real(self.p)
        object.__setattr__(self, "p", p)
        if not p > 0:
            raise ValueError("p must be positive (inf allowed)")


@dataclass(frozen=True)
class Lorentz:
    space: MeasureSpace
    p: Real
    q: Real

    def __post_init__(self):
        object.__setattr__(self, "p", as_real(self.p))
        object.__setattr__(self, "q", as_real(self.q))
        if not (self.p > 0 and self.q > 0 and is_finite(self.p) and is_finite(self.q)):
            raise ValueError("Lorentz exponents must be finite and positive")


@dataclass(frozen=True)
class WeakLp:
    space: MeasureSpace
    p: Real

    def __post_init__(self):
        object.__setattr__(self, "p", as_real(self.p))
        if not self.p > 0:
            raise ValueError("p must be positive")


@dataclass(frozen=True)
class MarcWeak:
    space: MeasureSpace
    phi: QuasiconcaveFn

    def __post_init__(self):
        ok, cert = quasiconcave_check(self.phi)
        if not ok:
            raise ValueError(f"profile is not quasiconcave: {cert}")


@dataclass(frozen=True)
class MarcStrong:
    space: MeasureSpace
    phi: QuasiconcaveFn

    def __post_init__(self):
        ok, cert = quasiconcave_check(self.phi)
        if not ok:
            raise ValueError(f"profile is not quasiconcave: {cert}")


NormSpec = Union[Lp, Lorentz, WeakLp, MarcWeak, MarcStrong]


@dataclass(frozen=True)
class XiWeight:
    """An explicit nonincreasing weight w; the seminorm is int_0^inf w f*."""

    weight: StepFn

    def __post_init__(self):
        if not is_rearranged(self.weight):
            raise ValueError("weight must be nonnegative nonincreasing on [0, inf)")
        if all(v == 0 for v in self.weight.vals):
            raise ValueError("weight must not vanish identically")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def norm_eval(spec: NormSpec, f: MeasFn) -> Real:
    """Exact norm value; +inf signals divergence, never an error."""
    if f.space != spec.space:
        raise ValueError("function does not live on the spec's space")
    r = rearrangement(f)
    if isinstance(spec, Lp):
        return _lp(r, spec.p)
    if isinstance(spec, Lorentz):
        return _lorentz(r, spec.p, spec.q)
    if isinstance(spec, WeakLp):
        return _weak_lp(r, spec.p)
    if isinstance(spec, MarcWeak):
        return _marc_weak(r, spec.phi)
    if isinstance(spec, MarcStrong):
        return _marc_strong(r, spec.phi)
    raise TypeError("unknown norm spec")


def _lp(r: StepFn, p: Real) -> Real:
    if p == INF:
        return r.vals[0]
    total: Real = Fraction(0)
    for a, b, v in r.pieces():
        if v == 0:
            continue
        if b == INF:
            return INF
        total += rational_pow(v, p) * (b - a)
    if p == 1:
        return total
    return rational_pow(total, 1 / Fraction(p) if isinstance(p, Fraction) else 1.0 / p)


def _lorentz(r: StepFn, p: Real, q: Real) -> Real:
    rho = q / p
    inv_q = 1 / q if isinstance(q, Fraction) else 1.0 / q
    total: Real = Fraction(0)
    for a, b, v in r.pieces():
        if v == 0:
            continue
        if b == INF:
            return INF
        total += rational_pow(v, q) * (rational_pow(b, rho) - rational_pow(a, rho)) / rho
    return rational_pow(total, inv_q)


def _weak_lp(r: StepFn, p: Real) -> Real:
    inv_p = 1 / Fraction(p) if isinstance(p, Fraction) else 1.0 / p
    best: Real = Fraction(0)
    for _, b, v in r.pieces():
        if v == 0:
            continue
        if b == INF:
            return INF
        best = max(best, v * rational_pow(b, inv_p))
    return best


def _marc_weak(r: StepFn, phi: QuasiconcaveFn) -> Real:
    # On a piece [a, b) where f* is the constant v, sup Phi(t) v = v Phi(b)
    # because the catalog profiles are continuous and nondecreasing.
    best: Real = Fraction(0)
    for _, b, v in r.pieces():
        if v == 0:
            continue
        pb = phi_at(phi, b)
        if pb == INF:
            return INF
        best = max(best, v * pb)
    return best


def _marc_strong(r: StepFn, phi: QuasiconcaveFn) -> Real:
    """sup Phi(t) H(t)/t with H(t) = int_0^t f*.

    On each piece of f* crossed with each analytic segment of Phi the
    objective t -> Phi(t)(c + v t)/t (c, v >= 0) has a derivative with at
    most one sign change (minus to plus), so it is quasi-convex and the
    supremum over the crossing is attained at its endpoints; hence the grid
    of candidates below is exhaustive, together with the limits at 0 (always
    0) and at infinity (computed analytically per profile).
    """
    if all(v == 0 for v in r.vals):
        return Fraction(0)
    candidates = set(r.cuts) | set(phi_breakpoints(phi))
    best: Real = _marc_strong_limit(r, phi)
    if best == INF:
        return INF
    for t in candidates:
        g = phi_at(phi, t) * _hardy_at(r, t) / t
        best = max(best, g)
    return best


def _marc_strong_limit(r: StepFn, phi: QuasiconcaveFn) -> Real:
    v_tail = r.vals[-1]
    if isinstance(phi, Power):
        if v_tail > 0:
            return INF
        if phi.alpha == 1:
            return _hardy_at(r, INF)
        return Fraction(0)
    if isinstance(phi, LogClip):
        # Phi == 1 eventually, so g(t) -> f**(inf) = tail value.
        return v_tail
    s = phi.final_slope
    last_v = phi.knots[-1][1]
    if v_tail > 0:
        return INF if s > 0 else last_v * v_tail
    return s * _hardy_at(r, INF) if s > 0 else Fraction(0)


def fundamental_function(spec: NormSpec, t) -> Real:
    """Norm of an indicator of measure t; errors if no such set exists."""
    t = t if t == INF else as_real(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return Fraction(0)
    sp = spec.space
    total = sp.total_measure()
    if t > total:
        raise ValueError(f"t={t} exceeds the space's total measure")
    if sp.is_atomic:
        if t == INF:
            if sp.kind != "atomic_n":
                raise ValueError("no representable indicator of infinite measure here")
            f: MeasFn = seq(sp, {}, tail=1)
        else:
            k = t / sp.atom_mass
            if not (isinstance(k, Fraction) and k.denominator == 1):
                raise ValueError(f"t={t} is not a multiple of the atom mass")
            f = indicator(sp, AtomicSet(sp, frozenset(range(int(k)))))
    else:
        left, _ = sp.domain
        if t == INF:
            f = indicator(sp, interval_set(sp, [(left, INF)]))
        else:
            f = indicator(sp, interval_set(sp, [(0, t)]))
    return norm_eval(spec, f)


def xi_seminorm(w: XiWeight, f: MeasFn) -> Real:
    """int_0^inf w(t) f*(t) dt, exactly (+inf when both tails persist)."""
    return integrate(pointwise_mul(w.weight, rearrangement(f)))


def logclip_norm_of_log_profile(c0, c1) -> Real:
    """MarcWeak(LogClip) norm of a function on [0,1) whose rearrangement is
    t -> c0 + c1 (1 - log t).

    With u = 1 - log t ranging over [1, inf), the objective is
    (c0 + c1 u)/u = c1 + c0/u, which is monotone in u; hence the supremum is
    c1 + max(c0, 0).  Requires c1 >= 0 and c0 + c1 >= 0 so the profile is
    nonnegative.  This closed form realizes the textbook values: the profile
    (1 - log t) itself has norm 1, and its image under t -> t^n, namely
    n (1 - log t) - (n - 1), has norm n.
    """
    c0, c1 = as_real(c0), as_real(c1)
    if c1 < 0 or c0 + c1 < 0:
        raise ValueError("profile must be nonnegative on (0, 1]")
    return c1 + max(c0, Fraction(0))
