"""Sigma-finite resonant measure spaces and the exact set algebra over them.

A space here is either non-atomic Lebesgue (half-line, line, or a bounded
interval [0, L)) or completely atomic with equal atom masses (indices from N,
Z, or {0..count-1}).  These are exactly the resonant spaces, which is the
setting in which rearrangement inequalities are saturated.

Sets are kept in a closed, exactly measurable class: finite disjoint unions
of half-open intervals [a, b) on the Lebesgue side (with -inf allowed only on
the full line and +inf right rays), and finite-or-cofinite index sets on the
atomic side.  Preimages under the symbol catalog never leave this class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .num import INF, NEG_INF, Real, as_real

LEBESGUE_HALFLINE = "lebesgue_halfline"
LEBESGUE_LINE = "lebesgue_line"
LEBESGUE_INTERVAL = "lebesgue_interval"
ATOMIC_N = "atomic_n"
ATOMIC_Z = "atomic_z"
ATOMIC_FINITE = "atomic_finite"

_LEBESGUE_KINDS = (LEBESGUE_HALFLINE, LEBESGUE_LINE, LEBESGUE_INTERVAL)
_ATOMIC_KINDS = (ATOMIC_N, ATOMIC_Z, ATOMIC_FINITE)


@dataclass(frozen=True)
class MeasureSpace:
    kind: str
    length: Real | None = None
    atom_mass: Real | None = None
    count: int | None = None

    def __post_init__(self):
        if self.kind in _LEBESGUE_KINDS:
            if self.kind == LEBESGUE_INTERVAL:
                if self.length is None or self.length <= 0:
                    raise ValueError("interval length must be positive")
            elif self.length is not None:
                raise ValueError(f"{self.kind} takes no length")
            if self.atom_mass is not None or self.count is not None:
                raise ValueError(f"{self.kind} takes no atomic parameters")
        elif self.kind in _ATOMIC_KINDS:
            if self.atom_mass is None or self.atom_mass <= 0:
                raise ValueError("atom_mass must be positive")
            if self.kind == ATOMIC_FINITE:
                if self.count is None or self.count < 1:
                    raise ValueError("count must be >= 1")
            elif self.count is not None:
                raise ValueError(f"{self.kind} takes no count")
            if self.length is not None:
                raise ValueError(f"{self.kind} takes no length")
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    # -- classification ----------------------------------------------------
    @property
    def is_atomic(self) -> bool:
        return self.kind in _ATOMIC_KINDS

    @property
    def domain(self) -> tuple[Real, Real]:
        """[left, right) endpoints of the Lebesgue carrier."""
        if self.kind == LEBESGUE_HALFLINE:
            return (Fraction(0), INF)
        if self.kind == LEBESGUE_LINE:
            return (NEG_INF, INF)
        if self.kind == LEBESGUE_INTERVAL:
            return (Fraction(0), self.length)
        raise ValueError("atomic space has no interval domain")

    def valid_index(self, j: int) -> bool:
        if self.kind == ATOMIC_N:
            return j >= 0
        if self.kind == ATOMIC_Z:
            return True
        if self.kind == ATOMIC_FINITE:
            return 0 <= j < self.count
        raise ValueError("not an atomic space")

    def total_measure(self) -> Real:
        if self.kind == LEBESGUE_INTERVAL:
            return self.length
        if self.kind == ATOMIC_FINITE:
            return self.atom_mass * self.count
        return INF


def halfline() -> MeasureSpace:
    return MeasureSpace(LEBESGUE_HALFLINE)


def line() -> MeasureSpace:
    return MeasureSpace(LEBESGUE_LINE)


def interval(length) -> MeasureSpace:
    return MeasureSpace(LEBESGUE_INTERVAL, length=as_real(length))


def atomic_n(atom_mass=1) -> MeasureSpace:
    return MeasureSpace(ATOMIC_N, atom_mass=as_real(atom_mass))


def atomic_z(atom_mass=1) -> MeasureSpace:
    return MeasureSpace(ATOMIC_Z, atom_mass=as_real(atom_mass))


def atomic_finite(count: int, atom_mass=1) -> MeasureSpace:
    return MeasureSpace(ATOMIC_FINITE, atom_mass=as_real(atom_mass), count=count)


# ---------------------------------------------------------------------------
# Interval sets
# ---------------------------------------------------------------------------


def _normalize_intervals(pairs, *, allow_overlap: bool):
    """Sort, validate, and merge touching [a,b) pairs."""
    pairs = sorted(((a, b) for a, b in pairs), key=lambda ab: (ab[0], ab[1]))
    out: list[list[Real]] = []
    for a, b in pairs:
        if not a < b:
            raise ValueError(f"empty or inverted interval [{a}, {b})")
        if out and a < out[-1][1]:
            if not allow_overlap:
                raise ValueError("overlapping intervals")
            out[-1][1] = max(out[-1][1], b)
        elif out and a == out[-1][1]:
            out[-1][1] = b
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


@dataclass(frozen=True)
class IntervalSet:
    """Finite disjoint union of half-open intervals within a Lebesgue space."""

    space: MeasureSpace
    intervals: tuple[tuple[Real, Real], ...]

    def __post_init__(self):
        if self.space.is_atomic:
            raise ValueError("IntervalSet needs a Lebesgue space")
        left, right = self.space.domain
        for a, b in self.intervals:
            if a == NEG_INF and self.space.kind != LEBESGUE_LINE:
                raise ValueError("left ray only allowed on the full line")
            if a < left or b > right:
                raise ValueError(f"[{a}, {b}) outside the space domain")

    def measure(self) -> Real:
        total: Real = Fraction(0)
        for a, b in self.intervals:
            if b == INF or a == NEG_INF:
                return INF
            total += b - a
        return total

    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, x) -> bool:
        return any(a <= x < b for a, b in self.intervals)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        _same_space(self, other)
        merged = _normalize_intervals(
            list(self.intervals) + list(other.intervals), allow_overlap=True
        )
        return IntervalSet(self.space, merged)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        _same_space(self, other)
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    out.append((lo, hi))
        return IntervalSet(self.space, _normalize_intervals(out, allow_overlap=False))

    def complement(self) -> "IntervalSet":
        left, right = self.space.domain
        out = []
        cursor = left
        for a, b in self.intervals:
            if cursor < a:
                out.append((cursor, a))
            cursor = b
        if cursor < right:
            out.append((cursor, right))
        return IntervalSet(self.space, tuple(out))

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersect(other.complement())


def interval_set(space: MeasureSpace, pairs: Iterable[tuple]) -> IntervalSet:
    """Public constructor: rejects overlapping input, merges touching pieces."""
    prepared = []
    for a, b in pairs:
        a = a if a in (INF, NEG_INF) else as_real(a)
        b = b if b in (INF, NEG_INF) else as_real(b)
        prepared.append((a, b))
    return IntervalSet(space, _normalize_intervals(prepared, allow_overlap=False))


def empty_set(space: MeasureSpace):
    if space.is_atomic:
        return AtomicSet(space, frozenset(), False)
    return IntervalSet(space, ())


# ---------------------------------------------------------------------------
# Atomic sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AtomicSet:
    """Finite or co-finite set of atoms.

    When ``cofinite`` is False, ``atoms`` lists the members; when True,
    ``atoms`` lists the excluded indices and every other valid index belongs.
    On AtomicFinite the co-finite form is materialized away.
    """

    space: MeasureSpace
    atoms: frozenset[int] = field(default_factory=frozenset)
    cofinite: bool = False

    def __post_init__(self):
        if not self.space.is_atomic:
            raise ValueError("AtomicSet needs an atomic space")
        for j in self.atoms:
            if not isinstance(j, int) or isinstance(j, bool):
                raise ValueError("atom indices must be integers")
            if not self.space.valid_index(j):
                raise ValueError(f"index {j} outside the space's range")
        if self.cofinite and self.space.kind == ATOMIC_FINITE:
            members = frozenset(
                j for j in range(self.space.count) if j not in self.atoms
            )
            object.__setattr__(self, "atoms", members)
            object.__setattr__(self, "cofinite", False)

    def measure(self) -> Real:
        if self.cofinite:
            return INF
        return self.space.atom_mass * len(self.atoms)

    def is_empty(self) -> bool:
        return not self.cofinite and not self.atoms

    def contains(self, j: int) -> bool:
        if not self.space.valid_index(j):
            return False
        return (j in self.atoms) != self.cofinite

    def union(self, other: "AtomicSet") -> "AtomicSet":
        _same_space(self, other)
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return AtomicSet(self.space, a.atoms | b.atoms, False)
        if a.cofinite and b.cofinite:
            return AtomicSet(self.space, a.atoms & b.atoms, True)
        if b.cofinite:
            a, b = b, a  # a cofinite, b finite
        return AtomicSet(self.space, a.atoms - b.atoms, True)

    def intersect(self, other: "AtomicSet") -> "AtomicSet":
        return self.complement().union(other.complement()).complement()

    def complement(self) -> "AtomicSet":
        return AtomicSet(self.space, self.atoms, not self.cofinite)

    def difference(self, other: "AtomicSet") -> "AtomicSet":
        return self.intersect(other.complement())


def atomic_set(space: MeasureSpace, atoms: Iterable[int], cofinite: bool = False) -> AtomicSet:
    return AtomicSet(space, frozenset(atoms), cofinite)


def _same_space(a, b) -> None:
    if a.space != b.space:
        raise ValueError("sets live on different spaces")


def measure(space: MeasureSpace, E) -> Real:
    """Exact measure of a catalog set; +inf for rays and co-finite tails."""
    if E.space != space:
        raise ValueError("set does not belong to this space")
    return E.measure()
