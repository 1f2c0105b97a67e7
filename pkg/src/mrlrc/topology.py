"""Coordinate layout and erasure-pattern taxonomy for LRCs with locality,
local distance and availability.

A topology is parametrized by (r, delta, t, g, N).  The code length is
n = g(t + N(r+delta-1-t)) and the canonical 1-based layout is

    T_1     = [1, t]
    R_(1,j) = T_1  u  [t+(j-1)w+1, t+jw],      w = r+delta-1-t
    T_i, R_(i,j): the group-1 sets shifted by (i-1)(t+Nw)

so the N repair sets of a group pairwise intersect exactly in the core
T_i, groups are disjoint and cover [n].  All coordinate sets here and in
every report are 1-based.

An erasure pattern E is locally correctable when every group has a
witness repair set j with |E n R_(i,j)| <= delta-1 and every other
repair set of the group has at most delta-1 erasures outside the core;
it is maximal when those inequalities can all be made equalities, which
forces |E| = gN(delta-1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class BadParams(ValueError):
    """Topology parameter inequality violated; the message names it."""


class IndexOutOfRange(IndexError):
    """A coordinate is outside [1, n]."""


class DimensionTooLarge(ValueError):
    """Requested dimension exceeds g(t + N(r-t))."""


class EnumerationCapExceeded(ValueError):
    """Maximal-pattern enumeration would exceed the configured cap."""


DEFAULT_PATTERN_CAP = 10 ** 6


@dataclass(frozen=True)
class Topology:
    r: int
    delta: int
    t: int
    g: int
    N: int
    mode: str
    n: int
    seg: int            # r + delta - 1 - t, coordinates per repair segment
    group_width: int    # t + N * seg
    cores: tuple        # cores[i-1] = frozenset T_i
    repair: tuple       # repair[i-1][j-1] = frozenset R_(i,j)
    groups: tuple       # groups[i-1] = frozenset R_i

    @property
    def coords(self) -> range:
        return range(1, self.n + 1)

    def group_of(self, coord: int) -> int:
        """1-based group index of a coordinate."""
        if not 1 <= coord <= self.n:
            raise IndexOutOfRange(f"coordinate {coord} outside [1, {self.n}]")
        return (coord - 1) // self.group_width + 1

    def max_dimension(self) -> int:
        """g(t + N(r-t)): the dimension leaving zero heavy parities."""
        return self.g * (self.t + self.N * (self.r - self.t))

    def local_parity_count(self) -> int:
        """gN(delta-1): the size of every maximal locally correctable pattern."""
        return self.g * self.N * (self.delta - 1)


def make_topology(r: int, delta: int, t: int, g: int, N: int,
                  mode: str = "plain") -> Topology:
    """Build the canonical 1-based layout; raises BadParams naming the
    violated inequality."""
    for name, v in (("r", r), ("delta", delta), ("t", t), ("g", g), ("N", N)):
        if not isinstance(v, int) or v < 1:
            raise BadParams(f"{name} must be a positive integer, got {v}")
    if mode not in ("plain", "availability"):
        raise BadParams(f"unknown mode {mode!r}")
    if t > r:
        raise BadParams(f"t <= r violated: t = {t} > r = {r}")
    if mode == "availability" and t > delta - 1:
        raise BadParams(
            f"availability requires t <= delta - 1: t = {t} > {delta - 1}")
    seg = r + delta - 1 - t
    width = t + N * seg
    n = g * width
    cores = []
    repair = []
    groups = []
    for i in range(g):
        off = i * width
        core = frozenset(range(off + 1, off + t + 1))
        sets = []
        for j in range(N):
            lo = off + t + j * seg + 1
            sets.append(core | frozenset(range(lo, lo + seg)))
        cores.append(core)
        repair.append(tuple(sets))
        groups.append(frozenset(range(off + 1, off + width + 1)))
    topo = Topology(r=r, delta=delta, t=t, g=g, N=N, mode=mode, n=n,
                    seg=seg, group_width=width,
                    cores=tuple(cores), repair=tuple(repair),
                    groups=tuple(groups))
    _check_layout(topo)
    return topo


def _check_layout(topo: Topology) -> None:
    # partition and intersection invariants, asserted constructively
    all_coords = set()
    for i in range(topo.g):
        grp = topo.groups[i]
        if all_coords & grp:
            raise AssertionError("groups overlap")
        all_coords |= grp
        core = topo.cores[i]
        inter = None
        for rs in topo.repair[i]:
            if len(rs) != topo.r + topo.delta - 1:
                raise AssertionError("repair set has wrong size")
            if not core <= rs:
                raise AssertionError("core not contained in repair set")
            inter = rs if inter is None else inter & rs
        if topo.N >= 2 and inter != core:
            raise AssertionError("repair sets do not intersect in the core")
    if all_coords != set(topo.coords):
        raise AssertionError("groups do not cover [n]")


def heavy_parity_count(topo: Topology, k: int) -> int:
    """h = g(t + N(r-t)) - k, the number of heavy (global) parities."""
    cap = topo.max_dimension()
    if k < 0 or k > cap:
        raise DimensionTooLarge(f"k = {k} exceeds g(t+N(r-t)) = {cap}")
    return cap - k


@dataclass(frozen=True)
class PatternClass:
    """Classification of an erasure pattern against the local constraints."""

    locally_correctable: bool
    maximal: bool
    witnesses: tuple | None  # per-group witness repair-set index, 1-based


@dataclass(frozen=True)
class ErasurePattern:
    coords: tuple
    maximal: bool
    witnesses: tuple | None


def _validate_coords(topo: Topology, coords) -> frozenset:
    e = frozenset(coords)
    for c in e:
        if not 1 <= c <= topo.n:
            raise IndexOutOfRange(f"coordinate {c} outside [1, {topo.n}]")
    return e


def _group_witnesses(topo: Topology, i: int, e: frozenset):
    """(witnesses, tight_witnesses) for group i (1-based) of pattern e."""
    d1 = topo.delta - 1
    core = topo.cores[i - 1]
    sets = topo.repair[i - 1]
    counts = [len(e & rs) for rs in sets]
    out_counts = [len((rs - core) & e) for rs in sets]
    witnesses, tight = [], []
    for j in range(topo.N):
        if counts[j] > d1:
            continue
        others = [out_counts[l] for l in range(topo.N) if l != j]
        if any(c > d1 for c in others):
            continue
        witnesses.append(j + 1)
        if counts[j] == d1 and all(c == d1 for c in others):
            tight.append(j + 1)
    return witnesses, tight


def classify_pattern(topo: Topology, coords) -> PatternClass:
    """Decide locally correctable / maximal, with per-group witnesses."""
    e = _validate_coords(topo, coords)
    chosen = []
    all_local = True
    all_tight = True
    for i in range(1, topo.g + 1):
        witnesses, tight = _group_witnesses(topo, i, e)
        if not witnesses:
            return PatternClass(False, False, None)
        all_tight = all_tight and bool(tight)
        chosen.append(tight[0] if tight else witnesses[0])
    if all_tight and len(e) != topo.local_parity_count():
        raise AssertionError("maximal pattern with unexpected size")
    return PatternClass(all_local, all_tight, tuple(chosen))


def per_group_maximal_sets(topo: Topology):
    """Distinct maximal per-group patterns of group 1, with a witness each.

    Returns a sorted list of (coords_tuple, witness_j).  Witness choices
    whose delta-1 erasures in R_(1,j) avoid the core produce the same
    coordinate set for several j; those duplicates are merged here, before
    the cross-group product is taken.
    """
    d1 = topo.delta - 1
    core = topo.cores[0]
    sets = topo.repair[0]
    found: dict[tuple, int] = {}
    for j in range(topo.N):
        inside = sorted(sets[j])
        outside = [sorted(sets[l] - core) for l in range(topo.N) if l != j]
        for first in itertools.combinations(inside, d1):
            for rest in itertools.product(
                    *(itertools.combinations(o, d1) for o in outside)):
                coords = tuple(sorted(first + tuple(c for blk in rest for c in blk)))
                found.setdefault(coords, j + 1)
    return sorted(found.items())


def count_maximal_patterns(topo: Topology) -> int:
    return len(per_group_maximal_sets(topo)) ** topo.g


def enumerate_maximal_patterns(topo: Topology, cap: int = DEFAULT_PATTERN_CAP):
    """Yield every maximal locally correctable pattern exactly once."""
    per_group = per_group_maximal_sets(topo)
    total = len(per_group) ** topo.g
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} maximal patterns exceed the cap {cap}")
    width = topo.group_width
    for combo in itertools.product(per_group, repeat=topo.g):
        coords = []
        witnesses = []
        for i, (cs, w) in enumerate(combo):
            off = i * width
            coords.extend(c + off for c in cs)
            witnesses.append(w)
        yield ErasurePattern(coords=tuple(coords), maximal=True,
                             witnesses=tuple(witnesses))


def _group_deficiency(topo: Topology, i: int, group_coords: frozenset,
                      budget: int) -> int | None:
    """Minimum removals making group i locally correctable, or None if > budget."""
    if _group_witnesses(topo, i, group_coords)[0]:
        return 0
    coords = sorted(group_coords)
    for size in range(1, min(len(coords), budget) + 1):
        for removal in itertools.combinations(coords, size):
            if _group_witnesses(topo, i, group_coords - set(removal))[0]:
                return size
    return None


def is_mr_correctable_pattern(topo: Topology, h: int, coords) -> bool:
    """True iff coords splits into E1 u E2 with E2 locally correctable and
    |E1| <= h.

    Local correctability is a per-group condition, so the minimum |E1| is
    the sum over groups of each group's removal deficiency; groups already
    satisfying the local conditions contribute nothing.
    """
    e = _validate_coords(topo, coords)
    if h < 0:
        raise ValueError("h must be non-negative")
    if len(e) > topo.local_parity_count() + h:
        return False
    budget = h
    for i in range(1, topo.g + 1):
        grp = e & topo.groups[i - 1]
        if not grp:
            continue
        d = _group_deficiency(topo, i, grp, budget)
        if d is None:
            return False
        budget -= d
    return True
