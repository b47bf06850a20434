"""Acceptance suite: the numbered end-to-end claims this package is built to
pass, one test per criterion.

Run `pytest -v tests/test_acceptance.py` for one pass/fail line per
criterion.  Every test is deterministically seeded, asserts its mathematical
claim at the stated tolerance, and asserts its wall-clock budget.  Budgets
are generous on purpose: they catch algorithmic regressions (quadratic
blowups), not machine noise.
"""

import math
import random
import time
from fractions import Fraction

from rispace import (
    INF,
    AtomicSymbol,
    Branch,
    Affine,
    IntervalSymbol,
    LogClip,
    Lp,
    MarcWeak,
    XiWeight,
    apply,
    atomic_finite,
    atomic_n,
    atomic_z,
    cesaro,
    cesaro_schedule,
    constant,
    decomposition_check,
    dilate,
    halfline,
    hardy_littlewood_pair,
    hlp_leq,
    interval,
    iterate_apply,
    line,
    measure_bound,
    norm_eval,
    permutation_limit,
    pointwise_leq,
    power_measure_bound,
    rearrangement,
    seq,
    seq_from_values,
    step,
    verify_suite,
    weak_type_ratio,
    xi_seminorm,
)
from rispace.examples import (
    bilateral_shift,
    exp_recip_symbol,
    logclip_reciprocal_minorant,
    nonsurjective_shift,
    power_symbol,
    shifted_power_symbol,
    translation_line,
    unilateral_shift,
)


def _done(label: str, t0: float, budget: float):
    elapsed = time.monotonic() - t0
    print(f"[acceptance] PASS {label} ({elapsed:.2f}s / budget {budget:.0f}s)")
    assert elapsed < budget, f"{label} exceeded its {budget}s budget: {elapsed:.1f}s"


# ---------------------------------------------------------------------------
# deterministic instance generators (local so the criteria stay auditable)
# ---------------------------------------------------------------------------


def _rand_step(rng, space, lo_cut, hi_cut, den=8, pieces=4, signed=True):
    k = rng.randint(1, pieces)
    cuts = sorted({Fraction(rng.randint(lo_cut * den + 1, hi_cut * den - 1), den) for _ in range(k + 1)})
    span = rng.randint(-6, 6) if signed else rng.randint(0, 9)
    vals = [Fraction(rng.randint(-6, 6) if signed else rng.randint(0, 9)) for _ in cuts]
    vals.append(Fraction(0))
    if space.kind == "lebesgue_line":
        vals[0] = Fraction(0)
        if len(cuts) == 1:
            cuts.append(cuts[0] + 1)
            vals.insert(1, Fraction(span))
    f = step(space, cuts, vals)
    if all(v == 0 for v in f.vals):
        return _rand_step(rng, space, lo_cut, hi_cut, den, pieces, signed)
    return f


def _rand_seq(rng, space, lo, hi, signed=True):
    n = rng.randint(1, 6)
    entries = {}
    for _ in range(n):
        j = rng.randint(lo, hi)
        entries[j] = rng.randint(-9, 9) if signed else rng.randint(0, 9)
    f = seq(space, entries)
    if not f.entries:
        return _rand_seq(rng, space, lo, hi, signed)
    return f


def _rand_finite_symbol(rng, count):
    images = [rng.randrange(count) for _ in range(count)]
    return AtomicSymbol(atomic_finite(count), tuple((j, images[j]) for j in range(count)))


def _rand_permutation(rng, count):
    images = list(range(count))
    rng.shuffle(images)
    return AtomicSymbol(atomic_finite(count), tuple((j, images[j]) for j in range(count)))


def _exact_bounded_instance(rng):
    """A catalog symbol whose power bounds are exact (certified), plus a
    random function on its space and the depth its pieces can safely reach."""
    kind = rng.randrange(7)
    if kind == 0:
        sym = _rand_finite_symbol(rng, rng.randint(2, 10))
        return sym, _rand_seq(rng, sym.space, 0, sym.space.count - 1), 10
    if kind == 1:
        sym = nonsurjective_shift()
        return sym, _rand_seq(rng, atomic_n(), 0, 8), 10
    if kind == 2:
        sym = bilateral_shift() if rng.random() < 0.5 else unilateral_shift()
        lo = -6 if sym.space.kind == "atomic_z" else 0
        return sym, _rand_seq(rng, sym.space, lo, 8), 10
    if kind == 3:
        sym = translation_line()
        return sym, _rand_step(rng, line(), -4, 4), 10
    if kind == 4:
        alpha = rng.choice([Fraction(1, 2), Fraction(2), Fraction(3), Fraction(-1), Fraction(-2)])
        sym = IntervalSymbol(line(), (Branch(-INF, INF, Affine(alpha, rng.randint(-3, 3))),))
        return sym, _rand_step(rng, line(), -4, 4), 10
    if kind == 5:
        alpha = rng.choice([Fraction(1, 2), Fraction(1), Fraction(2)])
        beta = rng.randint(0, 3)
        sym = IntervalSymbol(halfline(), (Branch(0, INF, Affine(alpha, beta)),))
        return sym, _rand_step(rng, halfline(), 0, 8), 10
    # two-branch doubling map on [0, 2): measure preserving, pieces double
    sym = IntervalSymbol(
        interval(2),
        (
            Branch(0, 1, Affine(2, 0)),
            Branch(1, 2, Affine(2, -2)),
        ),
    )
    return sym, _rand_step(rng, interval(2), 0, 2), 5


# ---------------------------------------------------------------------------
# the criteria
# ---------------------------------------------------------------------------


def test_01_l1_counterexample_exact_reproduction():
    t0 = time.monotonic()
    sym = translation_line()
    f = step(line(), [0, 1], [0, 1, 0])
    w = XiWeight(constant(halfline(), 1))
    for n in (1, 10, 100, 1000):
        m = cesaro(sym, f, n)
        assert m == step(line(), [0, n], [0, Fraction(1, n), 0])
        assert xi_seminorm(w, m) == 1
        l2 = float(norm_eval(Lp(line(), 2), m))
        assert abs(l2 - n ** (-0.5)) <= 1e-12
    _done("1: L1 counterexample (exact means, xi = 1, L2 = n^-1/2)", t0, 1.0)


def test_02_linfty_counterexample_constant_rearrangement():
    t0 = time.monotonic()
    sym = translation_line()
    f = step(line(), [0], [0, 1])  # indicator of [0, inf)
    one = constant(halfline(), 1)
    traj = cesaro_schedule(sym, f, tuple(range(2, 101)))
    for _, m in traj.means:
        assert rearrangement(m) == one
    _done("2: Linfty counterexample (rearranged means constant 1, n = 2..100)", t0, 1.0)


def test_03_singular_symbol_logclip_ratio_and_blowup():
    t0 = time.monotonic()
    rng = random.Random(303)
    for n in (2, 3):
        sym = power_symbol(n)
        assert measure_bound(sym) == INF
        spec = MarcWeak(sym.space, LogClip())
        for _ in range(50):
            f = _rand_step(rng, interval(1), 0, 1, den=64, signed=False)
            lhs = norm_eval(spec, apply(sym, f))
            rhs = norm_eval(spec, f)
            assert lhs <= n * rhs
    g = logclip_reciprocal_minorant(Fraction(1, 10**6))
    blown = norm_eval(MarcWeak(interval(1), LogClip()), apply(exp_recip_symbol(), g))
    assert blown > 10**4
    _done("3: t^n singular symbols (A = inf, ratio <= n, exp-recip blowup > 1e4)", t0, 5.0)


def test_04_shifted_power_iterates_stay_uniformly_bounded():
    t0 = time.monotonic()
    rng = random.Random(404)
    spec = MarcWeak(halfline(), LogClip())
    for n in (2, 3):
        sym = shifted_power_symbol(n)
        for _ in range(50):
            f = _rand_step(rng, halfline(), 0, 6, den=16, signed=False)
            denom = float(norm_eval(spec, f))
            worst = 0.0
            g = f
            for _ in range(30):
                g = apply(sym, g)
                worst = max(worst, float(norm_eval(spec, g)) / denom)
            assert worst <= n + 1e-9
    _done("4: shifted-power symbols (max_{k<=30} ||T^k f||/||f|| <= n)", t0, 30.0)


def test_05_iterate_dilation_estimate():
    t0 = time.monotonic()
    rng = random.Random(505)
    for _ in range(200):
        sym, f, max_k = _exact_bounded_instance(rng)
        k = rng.randint(1, max_k)
        pb = power_measure_bound(sym, k)
        assert pb.certified
        a_k = pb.at(k)
        assert a_k != INF
        lhs = rearrangement(iterate_apply(sym, f, k))
        rhs = dilate(rearrangement(f), Fraction(1) / a_k)
        assert pointwise_leq(lhs, rhs)
    _done("5: dilation estimate ((T^k f)* <= f*(t/A_k), 200 exact instances)", t0, 10.0)


def test_06_cesaro_hlp_estimate():
    t0 = time.monotonic()
    rng = random.Random(606)
    for i in range(200):
        sym, f, max_k = _exact_bounded_instance(rng)
        if max_k < 10:
            n = rng.randint(1, 6)  # multi-branch pieces double per step
        elif i % 5 == 0:
            n = rng.choice([50, 100])
        else:
            n = rng.randint(1, 12)
        pb = power_measure_bound(sym, n)
        a = pb.sup
        assert pb.certified and a != INF
        b = min(Fraction(1), Fraction(1) / a) if a > 1 else Fraction(1)
        mean = cesaro(sym, f, n)
        assert hlp_leq(mean, dilate(rearrangement(f), b))
    _done("6: Cesaro HLP estimate (C_n f < D_B f*, 200 instances, n <= 100)", t0, 20.0)


def test_07_hardy_littlewood_pairs():
    t0 = time.monotonic()
    rng = random.Random(707)
    for i in range(500):
        if i % 2 == 0:
            # general pair on a shared space
            sp = rng.choice([halfline(), interval(4), line(), atomic_z(), atomic_n()])
            if sp.is_atomic:
                f, g = _rand_seq(rng, sp, -4 if sp.kind == "atomic_z" else 0, 6), _rand_seq(
                    rng, sp, -4 if sp.kind == "atomic_z" else 0, 6
                )
            else:
                lo = -4 if sp.kind == "lebesgue_line" else 0
                hi = 4
                f = _rand_step(rng, sp, lo, hi)
                g = _rand_step(rng, sp, lo, hi)
            lhs, rhs = hardy_littlewood_pair(f, g)
            assert lhs <= rhs
        else:
            # both nonincreasing on the half-line: equality, exactly
            sp = halfline()
            f = rearrangement(_rand_step(rng, sp, 0, 8))
            g = rearrangement(_rand_step(rng, sp, 0, 8))
            lhs, rhs = hardy_littlewood_pair(f, g)
            assert lhs == rhs
    _done("7: Hardy-Littlewood (500 pairs, equality when similarly ordered)", t0, 5.0)


def test_08_weak_type_maximal_bound():
    t0 = time.monotonic()
    rng = random.Random(808)
    for i in range(100):
        pick = i % 3
        if pick == 0:
            sym = translation_line()
            f = _rand_step(rng, line(), -3, 3, signed=False)
            spec = Lp(line(), 1)
        elif pick == 1:
            sym = bilateral_shift()
            f = _rand_seq(rng, atomic_z(), -5, 5, signed=False)
            spec = Lp(atomic_z(), 1)
        else:
            sym = _rand_permutation(rng, rng.randint(2, 16))
            f = _rand_seq(rng, sym.space, 0, sym.space.count - 1, signed=False)
            spec = Lp(sym.space, 1)
        K = rng.randint(1, 64)
        sup = max(
            abs(v) for v in (f.vals if hasattr(f, "vals") else [v for _, v in f.entries])
        )
        grid = [Fraction(k, 16) * sup for k in range(1, 17)]
        ratio = weak_type_ratio(sym, f, K, spec, grid)
        assert float(ratio) <= 1 + 1e-12
    _done("8: Hopf weak-type bound (s mu{T# > s} <= ||f||_1, 100 instances)", t0, 30.0)


def test_09_permutation_mean_ergodic_theorem():
    t0 = time.monotonic()
    rng = random.Random(909)
    count = 64
    schedule = tuple(2**j for j in range(15))  # 1 .. 2^14
    for _ in range(50):
        sym = _rand_permutation(rng, count)
        f = seq_from_values(atomic_finite(count), [rng.randint(-9, 9) for _ in range(count)])
        lim = permutation_limit(sym, f)
        assert apply(sym, lim) == lim
        d = decomposition_check(sym, f)
        assert d.exact
        supf = max(abs(f.value_at(j)) for j in range(count))
        for n in schedule:
            m = cesaro(sym, f, n)
            gap = max(abs(m.value_at(j) - lim.value_at(j)) for j in range(count))
            assert gap <= Fraction(2 * count * supf, n)
    _done("9: permutation mean ergodic theorem (64 atoms, dyadic to 2^14)", t0, 60.0)


def test_10_power_bound_discriminates():
    t0 = time.monotonic()
    sym = nonsurjective_shift()
    assert measure_bound(sym) == 2
    pb = power_measure_bound(sym, 5)
    assert pb.at(5) == 6
    _done("10: power bounds separate measure-bounded from power-bounded", t0, 1.0)


def test_11_full_property_suite():
    t0 = time.monotonic()
    suite = verify_suite(seed=42, trials=500)
    failed = [r.name for r in suite.results if not r.passed]
    assert suite.ok, f"property failures: {failed}"
    _done("11: verify_suite seed 42, 500 trials, 0 failures", t0, 180.0)
