"""Independent reference implementations used to cross-check the library.

Everything here is deliberately computed by a *different* algorithm than the
one under test: distribution functions by direct piece scanning, rearranged
values by searching the finite value set, Lp norms by midpoint sampling on a
numpy grid, Lorentz norms by mpmath quadrature, Cesaro averages by dictionary
orbit simulation.  Slow and dumb on purpose.
"""

from fractions import Fraction

import numpy as np

from rispace import INF, AtomSeq, StepFn, to_float


def dist_oracle(f, s):
    """mu({|f| > s}) by scanning pieces/entries directly."""
    s = abs(s) if s < 0 else s
    if isinstance(f, AtomSeq):
        if abs(f.tail) > s:
            return INF
        n = sum(1 for _, v in f.entries if abs(v) > s)
        return n * f.space.atom_mass
    total = Fraction(0)
    for a, b, v in f.pieces():
        if abs(v) > s:
            if b == INF or a == -INF or a == float("-inf"):
                return INF
            total += b - a
    return total


def rearr_value_oracle(f, t):
    """f*(t) = inf{s >= 0 : dist(s) <= t}, searched over the value set.

    For a simple function the infimum is attained at 0 or at one of the
    finitely many values of |f|.
    """
    if isinstance(f, AtomSeq):
        levels = {abs(v) for _, v in f.entries} | {abs(f.tail), Fraction(0)}
    else:
        levels = {abs(v) for v in f.vals} | {Fraction(0)}
    best = None
    for s in sorted(levels):
        if dist_oracle(f, s) <= t:
            best = s
            break
    assert best is not None, "distribution never drops below t"
    return best


def lp_grid_oracle(f: StepFn, p, cells=1 << 15):
    """Lp norm by midpoint sampling.  Error ~ (#jumps) * cell / support."""
    lo, hi = _finite_support(f)
    if hi <= lo:
        return 0.0
    xs = np.linspace(to_float(lo), to_float(hi), cells, endpoint=False)
    xs += (to_float(hi) - to_float(lo)) / (2 * cells)
    vals = np.array([abs(to_float(f.value_at(x))) for x in xs])
    dx = (to_float(hi) - to_float(lo)) / cells
    pf = to_float(p)
    return float((vals**pf).sum() * dx) ** (1.0 / pf)


def lorentz_quad_oracle(f: StepFn, rearranged: StepFn, p, q):
    """Lorentz (p,q) norm by numerical quadrature of (t^{1/p} f*(t))^q dt/t.

    The rearrangement's cuts are used only to split the integration range;
    the integrand itself is evaluated pointwise.
    """
    import mpmath

    pf, qf = to_float(p), to_float(q)
    nodes = [0.0] + [to_float(c) for c in rearranged.cuts]
    if rearranged.vals[-1] != 0:
        raise ValueError("needs compactly supported rearrangement")

    def integrand(t):
        t = float(t)
        if t <= 0:
            return 0.0
        v = abs(to_float(rearranged.value_at(t)))
        return (t ** (1.0 / pf) * v) ** qf / t

    total = mpmath.mpf(0)
    for a, b in zip(nodes, nodes[1:]):
        if b > a:
            total += mpmath.quad(integrand, [a, b])
    return float(total) ** (1.0 / qf)


def cesaro_dict_oracle(image_of, f_value_at, indices, n):
    """Brute-force (1/n) sum_{i<n} f(phi^i(j)) for j in indices."""
    out = {}
    for j in indices:
        acc = Fraction(0)
        pos = j
        for _ in range(n):
            acc += f_value_at(pos)
            pos = image_of(pos)
        out[j] = acc / n
    return out


def maximal_dict_oracle(image_of, f_value_at, indices, K):
    """Brute-force max_{n<=K} (1/n) sum_{i<n} |f(phi^i(j))|."""
    out = {}
    for j in indices:
        acc = Fraction(0)
        best = None
        pos = j
        for n in range(1, K + 1):
            acc += abs(f_value_at(pos))
            pos = image_of(pos)
            cur = acc / n
            best = cur if best is None or cur > best else best
        out[j] = best
    return out


def _finite_support(f: StepFn):
    lo, hi = f.space.domain
    if f.vals[-1] != 0:
        raise ValueError("right tail must vanish")
    if lo == -INF or lo == float("-inf"):
        if f.vals[0] != 0:
            raise ValueError("left tail must vanish")
        lo = f.cuts[0]
    hi = f.cuts[-1] if f.cuts else lo
    return lo, hi
