from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rispace import (
    AtomicSymbol,
    Lp,
    XiWeight,
    apply,
    atomic_finite,
    atomic_n,
    atomic_z,
    cesaro,
    cesaro_schedule,
    convergence_report,
    decomposition_check,
    halfline,
    interval,
    iterate_apply,
    line,
    maximal_truncated,
    permutation_limit,
    seq,
    seq_from_values,
    spec_label,
    step,
    weak_type_ratio,
)
from rispace.examples import (
    bilateral_shift,
    nonsurjective_shift,
    power_symbol,
    translation_line,
    unilateral_shift,
)

from .oracles import cesaro_dict_oracle, maximal_dict_oracle


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------


def test_apply_power_symbol():
    f = step(interval(1), [Fraction(1, 4)], [1, 0])
    assert apply(power_symbol(2), f) == step(interval(1), [Fraction(1, 2)], [1, 0])


def test_apply_translation():
    f = step(line(), [0, 1], [0, 1, 0])
    assert apply(translation_line(), f) == step(line(), [1, 2], [0, 1, 0])


def test_apply_shifts():
    e5 = seq(atomic_z(), {5: 1})
    assert apply(bilateral_shift(), e5) == seq(atomic_z(), {4: 1})
    e0 = seq(atomic_n(), {0: 1})
    # unilateral shift never reaches 0 again
    assert apply(unilateral_shift(), e0) == seq(atomic_n(), {})


def test_apply_respects_tails():
    f = seq(atomic_n(), {0: 5}, tail=2)
    g = apply(unilateral_shift(), f)
    assert g.tail == 2 and g.value_at(0) == 2


def test_iterate_apply():
    f = step(line(), [0, 1], [0, 1, 0])
    assert iterate_apply(translation_line(), f, 0) == f
    assert iterate_apply(translation_line(), f, 3) == step(line(), [3, 4], [0, 1, 0])
    with pytest.raises(ValueError):
        iterate_apply(translation_line(), f, -1)


# ---------------------------------------------------------------------------
# Cesaro means: frozen rows
# ---------------------------------------------------------------------------


def test_cesaro_translation_spreads_the_box():
    f = step(line(), [0, 1], [0, 1, 0])
    for n in (1, 2, 10):
        m = cesaro(translation_line(), f, n)
        assert m == step(line(), [0, n], [0, Fraction(1, n), 0])


def test_cesaro_three_cycle_reaches_the_average():
    sym = AtomicSymbol(atomic_finite(3), ((0, 1), (1, 2), (2, 0)))
    f = seq_from_values(atomic_finite(3), [1, 2, 6])
    assert cesaro(sym, f, 3) == seq_from_values(atomic_finite(3), [3, 3, 3])


def test_cesaro_unilateral_shift_frozen():
    f = seq(atomic_n(), {j: 1 for j in range(6)})
    for n in (6, 10):
        m = cesaro(unilateral_shift(), f, n)
        for j in range(8):
            assert m.value_at(j) == Fraction(min(n, max(0, 6 - j)), n)


def test_cesaro_nonsurjective_shift_l1_grows():
    e0 = seq(atomic_n(), {0: 1})
    for n in (1, 4, 9):
        m = cesaro(nonsurjective_shift(), e0, n)
        total = sum(v for _, v in m.entries)
        assert total == Fraction(n + 1, 2)


def test_cesaro_indicator_halfline_staircase():
    f = step(line(), [0], [0, 1])  # chi_[0, inf)
    n = 5
    m = cesaro(translation_line(), f, n)
    assert m.value_at(-1) == 0
    for i in range(n - 1):
        assert m.value_at(i) == Fraction(i + 1, n)
    assert m.value_at(n - 1) == 1
    assert m.value_at(100) == 1


def test_cesaro_schedule_matches_single_calls():
    f = step(line(), [0, 1], [0, 1, 0])
    traj = cesaro_schedule(translation_line(), f, (1, 2, 4, 8))
    assert tuple(n for n, _ in traj.means) == (1, 2, 4, 8)
    for n, mean in traj.means:
        assert mean == cesaro(translation_line(), f, n)
    with pytest.raises(ValueError):
        cesaro_schedule(translation_line(), f, (2, 2))


# ---------------------------------------------------------------------------
# permutations: limit, decomposition, rate
# ---------------------------------------------------------------------------


def test_permutation_limit_is_cycle_average():
    sym = AtomicSymbol(atomic_finite(4), ((0, 1), (1, 0), (2, 3), (3, 2)))
    f = seq_from_values(atomic_finite(4), [1, 3, 5, 9])
    assert permutation_limit(sym, f) == seq_from_values(atomic_finite(4), [2, 2, 7, 7])


def test_decomposition_frozen():
    sym = AtomicSymbol(atomic_finite(4), ((0, 1), (1, 0), (2, 3), (3, 2)))
    f = seq_from_values(atomic_finite(4), [1, 3, 5, 9])
    d = decomposition_check(sym, f)
    assert d.exact
    assert d.kernel_part == seq_from_values(atomic_finite(4), [2, 2, 7, 7])
    assert d.range_part == seq_from_values(atomic_finite(4), [-1, 1, -2, 2])
    assert d.witness == seq_from_values(atomic_finite(4), [0, 1, 0, 2])


def test_permutation_limit_requires_a_permutation():
    bad = AtomicSymbol(atomic_finite(2), ((0, 0), (1, 0)))
    with pytest.raises(ValueError):
        permutation_limit(bad, seq_from_values(atomic_finite(2), [1, 2]))


@st.composite
def _permutation_and_fn(draw):
    n = draw(st.integers(2, 10))
    images = draw(st.permutations(list(range(n))))
    vals = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    sym = AtomicSymbol(atomic_finite(n), tuple((j, images[j]) for j in range(n)))
    return sym, seq_from_values(atomic_finite(n), vals)


@given(_permutation_and_fn())
@settings(max_examples=60)
def test_permutation_limit_is_invariant_and_mass_preserving(pair):
    sym, f = pair
    lim = permutation_limit(sym, f)
    assert apply(sym, lim) == lim
    assert sum(lim.value_at(j) for j in range(sym.space.count)) == sum(
        f.value_at(j) for j in range(sym.space.count)
    )


@given(_permutation_and_fn(), st.integers(1, 40))
@settings(max_examples=60)
def test_permutation_mean_rate(pair, n):
    # |C_n f - Tf| <= 2 L ||f||_inf / n with L the longest cycle
    sym, f = pair
    count = sym.space.count
    lim = permutation_limit(sym, f)
    m = cesaro(sym, f, n)
    supf = max(abs(f.value_at(j)) for j in range(count))
    gap = max(abs(m.value_at(j) - lim.value_at(j)) for j in range(count))
    assert gap <= Fraction(2 * count * supf, n)


# ---------------------------------------------------------------------------
# maximal operator and weak type
# ---------------------------------------------------------------------------


def test_maximal_bilateral_delta():
    m = maximal_truncated(bilateral_shift(), seq(atomic_z(), {0: 1}), 4)
    for j in range(4):
        assert m.value_at(-j) == Fraction(1, j + 1)
    assert m.value_at(1) == 0
    assert m.value_at(-4) == 0


def test_maximal_translation_box():
    f = step(line(), [0, 1], [0, 1, 0])
    m = maximal_truncated(translation_line(), f, 2)
    assert m == step(line(), [0, 1, 2], [0, 1, Fraction(1, 2), 0])


def test_maximal_uses_absolute_value_and_K_monotone():
    f = seq(atomic_z(), {0: -2})
    m1 = maximal_truncated(bilateral_shift(), f, 1)
    assert m1.value_at(0) == 2
    m3 = maximal_truncated(bilateral_shift(), f, 3)
    assert all(m3.value_at(j) >= m1.value_at(j) for j in range(-3, 3))


def test_weak_type_frozen_value():
    e0 = seq(atomic_z(), {0: 1})
    spec = Lp(atomic_z(), 1)
    r = weak_type_ratio(bilateral_shift(), e0, 4, spec, [Fraction(1, 2)])
    assert r == Fraction(1, 2)


def test_weak_type_input_guards():
    spec = Lp(atomic_z(), 1)
    with pytest.raises(ValueError):
        weak_type_ratio(bilateral_shift(), seq(atomic_z(), {0: -1}), 2, spec, [1])
    with pytest.raises(ValueError):
        weak_type_ratio(bilateral_shift(), seq(atomic_z(), {}), 2, spec, [1])
    with pytest.raises(ValueError):
        weak_type_ratio(bilateral_shift(), seq(atomic_z(), {0: 1}), 2, spec, [0])


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def test_convergence_report_shape_and_determinism():
    f = step(line(), [0, 1], [0, 1, 0])
    w = XiWeight(step(halfline(), [1], [1, 0]))
    rep = convergence_report(
        translation_line(),
        f,
        [Lp(line(), 1), Lp(line(), 2)],
        [w],
        (1, 2, 4),
        sample_points=[Fraction(1, 2)],
    )
    assert rep.columns == ("n", "L1", "L2", "xi0", "at[0.5]")
    assert rep.column("n") == [1, 2, 4]
    assert rep.column("L1") == [1, 1, 1]
    rep2 = convergence_report(
        translation_line(),
        f,
        [Lp(line(), 1), Lp(line(), 2)],
        [w],
        (1, 2, 4),
        sample_points=[Fraction(1, 2)],
    )
    assert rep.to_csv() == rep2.to_csv()
    assert rep.to_json() == rep2.to_json()
    assert rep.to_csv().splitlines()[0] == "n,L1,L2,xi0,at[0.5]"


def test_spec_labels():
    from rispace import Lorentz, MarcWeak, Power, WeakLp

    assert spec_label(Lp(line(), 2)) == "L2"
    assert spec_label(Lorentz(halfline(), 2, 1)) == "Lorentz(2,1)"
    assert spec_label(WeakLp(halfline(), 3)) == "weak-L3"
    assert spec_label(MarcWeak(halfline(), Power(Fraction(1, 2)))) == "m[t^0.5]"
    assert spec_label(XiWeight(step(halfline(), [1], [1, 0]))) == "xi"


# ---------------------------------------------------------------------------
# randomized cross-checks against the dictionary oracle
# ---------------------------------------------------------------------------


@st.composite
def _atomic_instance(draw):
    n = draw(st.integers(2, 8))
    images = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    vals = draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n))
    sym = AtomicSymbol(atomic_finite(n), tuple((j, images[j]) for j in range(n)))
    return sym, seq_from_values(atomic_finite(n), vals)


@given(_atomic_instance(), st.integers(1, 12))
@settings(max_examples=80)
def test_cesaro_matches_dict_oracle(pair, n):
    sym, f = pair
    want = cesaro_dict_oracle(sym.image_of, f.value_at, range(sym.space.count), n)
    got = cesaro(sym, f, n)
    assert all(got.value_at(j) == want[j] for j in range(sym.space.count))


@given(_atomic_instance(), st.integers(1, 9))
@settings(max_examples=80)
def test_maximal_matches_dict_oracle(pair, K):
    sym, f = pair
    want = maximal_dict_oracle(sym.image_of, f.value_at, range(sym.space.count), K)
    got = maximal_truncated(sym, f, K)
    assert all(got.value_at(j) == want[j] for j in range(sym.space.count))
