"""Exhaustive and sampled verification of the maximal-recovery property,
erasure decoding, the exact l(P, h) parameter, and the field-size lower
bound evaluators.

A code is maximally recoverable iff for every maximal locally correctable
pattern E the restriction of the code to the complement of E is MDS of
dimension k and length k + h.  verify_mr_exhaustive checks exactly that,
either generator-side (every k x k minor of G restricted to the
complement invertible) or parity-side (rank(H|_(E u F)) full for every
h-subset F of the complement); both are implemented and agree.  The
sweep also re-checks the local-distance premise on every repair set, so
a mutilated bundle cannot pass by losing its locality.

Reports serialize to JSON without timing fields, so two runs with the
same seed produce byte-identical documents.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor

from .matrix import MatrixF, map_entries
from .constructions import MrLrcCode, local_generator, plan_field
from .topology import (
    Topology, enumerate_maximal_patterns, is_mr_correctable_pattern,
    per_group_maximal_sets,
)
from .rng import ALGORITHM, Xoshiro256

SCHEMA_VERSION = 1


class WrongKind(ValueError):
    """Operation applies to a different construction kind."""


class TooLargeToEnumerate(ValueError):
    """Subset enumeration exceeds the configured cap."""


class InvalidInput(ValueError):
    """Unerased symbols are inconsistent with every codeword."""


@dataclass(frozen=True)
class MrFailure:
    """A verification witness: the pattern and what broke there."""

    pattern: tuple
    detail: str

    def to_json(self) -> dict:
        return {"pattern": list(self.pattern), "detail": self.detail}


@dataclass
class MrReport:
    code_id: str
    mode: str
    patterns_checked: int
    failures: list = field(default_factory=list)
    ell_exact: int | None = None
    bound_values: dict | None = None
    prng: dict | None = None
    wall_time: float = 0.0  # excluded from JSON to keep reports byte-stable

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "code_id": self.code_id,
            "mode": self.mode,
            "verdict": "pass" if self.passed else "fail",
            "patterns_checked": self.patterns_checked,
            "failures": [f.to_json() for f in self.failures],
        }
        if self.ell_exact is not None:
            doc["ell_exact"] = self.ell_exact
        if self.bound_values is not None:
            doc["bound_values"] = self.bound_values
        if self.prng is not None:
            doc["prng"] = self.prng
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False) + "\n"


def code_id(code: MrLrcCode) -> str:
    t = code.topo
    return (f"{code.kind}-r{t.r}-d{t.delta}-t{t.t}-g{t.g}-N{t.N}"
            f"-k{code.k}-h{code.h}")


def _local_property_failures(code: MrLrcCode) -> list[MrFailure]:
    """Check d(C|_R) >= delta on every repair set via the local ingredients."""
    topo = code.topo
    tower = code.tower
    out = []
    if code.kind == "gen":
        a_loc = local_generator(topo, "gen", tower.base)
        a_emb = map_entries(a_loc, tower.top, tower.embed)
        rank_a = a_emb.rank()
        for i, sets in enumerate(topo.repair, start=1):
            for j, rs in enumerate(sets, start=1):
                sub = code.G.restrict_columns(sorted(rs))
                stacked = MatrixF(tower.top, a_emb.data + sub.data)
                if stacked.rank() != rank_a:
                    out.append(MrFailure(tuple(sorted(rs)),
                                         f"restriction to R_({i},{j}) leaves "
                                         "the local MDS code"))
    else:
        a_prime = local_generator(topo, "pc2", tower.base)
        a_t = map_entries(a_prime, tower.top, tower.embed).transpose()
        for i, sets in enumerate(topo.repair, start=1):
            for j, rs in enumerate(sets, start=1):
                sub = code.G.restrict_columns(sorted(rs))
                if not sub.mul(a_t).is_zero():
                    out.append(MrFailure(tuple(sorted(rs)),
                                         f"local parities violated on R_({i},{j})"))
    return out


def verify_mr_exhaustive(code: MrLrcCode, side: str = "generator",
                         pattern_cap: int = 10 ** 6,
                         check_local: bool = True,
                         fail_fast: bool = False) -> MrReport:
    """Sweep every maximal locally correctable pattern.

    side "generator": the restriction of G to the pattern complement must
    be MDS of dimension k (every k x k minor invertible).
    side "parity": rank(H|_(E u F)) = |E| + h for every h-subset F of the
    complement; equivalent, implemented as an independent route.

    The local-distance premise (d >= delta on every repair set) is checked
    first unless check_local is False: the pattern criterion certifies
    maximal recoverability only for codes that are LRCs of the stated
    type.  With fail_fast the sweep stops at the first failure.
    """
    if side not in ("generator", "parity"):
        raise ValueError("side must be 'generator' or 'parity'")
    start = time.monotonic()
    topo = code.topo
    failures = []
    if not code.G.mul(code.H.transpose()).is_zero():
        failures.append(MrFailure((), "G H^T != 0"))
    if code.G.rank() != code.k:
        failures.append(MrFailure((), f"rank(G) != k = {code.k}"))
    if code.H.rank() != code.n - code.k:
        failures.append(MrFailure((), f"rank(H) != n - k = {code.n - code.k}"))
    if check_local:
        failures.extend(_local_property_failures(code))
    g_mat, h_mat = code.G, code.H
    n = topo.n
    checked = 0
    if failures and fail_fast:
        return MrReport(code_id=code_id(code), mode="exhaustive",
                        patterns_checked=0, failures=failures,
                        bound_values=_bound_row(code),
                        wall_time=time.monotonic() - start)
    for pat in enumerate_maximal_patterns(topo, cap=pattern_cap):
        checked += 1
        erased = set(pat.coords)
        comp = [c for c in range(1, n + 1) if c not in erased]
        if side == "generator":
            sub = g_mat.restrict_columns(comp)
            if code.k == 0:
                continue
            for sel in itertools.combinations(range(len(comp)), code.k):
                cols = [sel_i + 1 for sel_i in sel]
                if sub.restrict_columns(cols).det() == 0:
                    failures.append(MrFailure(
                        pat.coords,
                        "singular minor on surviving columns "
                        f"{[comp[i] for i in sel]}"))
                    break
        else:
            for extra in itertools.combinations(comp, code.h):
                coords = sorted(erased | set(extra))
                sub = h_mat.restrict_columns(coords)
                if sub.rank() != len(coords):
                    failures.append(MrFailure(
                        pat.coords,
                        f"rank defect after adding erasures {list(extra)}"))
                    break
        if failures and fail_fast:
            break
    report = MrReport(code_id=code_id(code), mode="exhaustive",
                      patterns_checked=checked, failures=failures,
                      bound_values=_bound_row(code),
                      wall_time=time.monotonic() - start)
    return report


def verify_mr_sampled(code: MrLrcCode, trials: int, seed: int) -> MrReport:
    """Seeded random sweep: maximal pattern (uniform per group) plus at
    most h extra erasures; checks rank(H|_E) = |E|."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    start = time.monotonic()
    topo = code.topo
    rng = Xoshiro256(seed)
    per_group = per_group_maximal_sets(topo)
    width = topo.group_width
    h_mat = code.H
    failures = []
    for _ in range(trials):
        coords = set()
        for i in range(topo.g):
            cs, _w = per_group[rng.randrange(len(per_group))]
            coords.update(c + i * width for c in cs)
        extra = rng.randrange(code.h + 1)
        if extra:
            rest = [c for c in range(1, topo.n + 1) if c not in coords]
            coords.update(rng.sample(rest, extra))
        coords = sorted(coords)
        if h_mat.restrict_columns(coords).rank() != len(coords):
            failures.append(MrFailure(tuple(coords), "rank defect"))
    return MrReport(code_id=code_id(code), mode="sampled",
                    patterns_checked=trials, failures=failures,
                    bound_values=_bound_row(code),
                    prng={"algorithm": ALGORITHM, "seed": seed},
                    wall_time=time.monotonic() - start)


def _bound_row(code: MrLrcCode) -> dict:
    t = code.topo
    lb = lower_bound_field(BoundInputs(r=t.r, delta=t.delta, t=t.t, g=t.g,
                                       N=t.N, h=code.h))
    return {
        "kind": code.kind,
        "field_size": code.plan.field_size,
        "bound_value": code.plan.bound_value,
        "lower_bound": lb.to_json_dict(),
    }


# ---------------------------------------------------------------------------
# erasure decoding


def erasure_positions(word) -> tuple[list, list]:
    """Split a word with None erasure marks into (erased_1based, kept_1based)."""
    erased = [i + 1 for i, v in enumerate(word) if v is None]
    kept = [i + 1 for i, v in enumerate(word) if v is not None]
    return erased, kept


def decode_erasures(code: MrLrcCode, word):
    """Complete a codeword with erasures marked as None.

    Returns the codeword tuple when H restricted to the erased columns has
    full column rank, None when the pattern is unrecoverable, and raises
    InvalidInput when the unerased symbols are consistent with no codeword.
    """
    word = list(word)
    if len(word) != code.n:
        raise ValueError(f"word length must be n = {code.n}")
    h_mat = code.H
    top = code.tower.top
    erased, kept = erasure_positions(word)
    syndrome_src = [word[i - 1] for i in kept]
    kept_cols = h_mat.restrict_columns(kept)
    rhs_vec = kept_cols.mul(MatrixF(top, [(v,) for v in syndrome_src],
                                    cols=1)) if kept else \
        MatrixF.zeros(top, h_mat.rows, 1)
    rhs = [top.neg(v[0]) for v in rhs_vec.data]
    if not erased:
        if any(rhs):
            raise InvalidInput("word is not a codeword")
        return tuple(word)
    sub = h_mat.restrict_columns(erased)
    if sub.rank() < len(erased):
        return None
    x = sub.solve_unique(rhs)
    if x is None:
        raise InvalidInput("unerased symbols are inconsistent with the code")
    for pos, v in zip(erased, x):
        word[pos - 1] = v
    return tuple(word)


def erasure_rank_defect(code: MrLrcCode, coords) -> int:
    """|E| - rank(H|_E): zero iff the pattern is uniquely decodable."""
    coords = sorted(set(coords))
    if not coords:
        return 0
    return len(coords) - code.H.restrict_columns(coords).rank()


# ---------------------------------------------------------------------------
# the l(P, h) parameter


def ell_exact(p_mat: MatrixF, h: int, n_cap: int = 20) -> int:
    """max{|E| : |E| - rank(P|_E) <= h} by subset search.

    Sizes are scanned in decreasing order starting at min(n, rank(P) + h):
    the defect |E| - rank(P|_E) is monotone under inclusion and at least
    |E| - rank(P), so no larger size can qualify.
    """
    if h < 0:
        raise ValueError("h must be non-negative")
    n = p_mat.cols
    if n > n_cap:
        raise TooLargeToEnumerate(f"n = {n} exceeds the cap {n_cap}")
    start = min(n, p_mat.rank() + h)
    for size in range(start, -1, -1):
        for sel in itertools.combinations(range(1, n + 1), size):
            if size - p_mat.restrict_columns(sel).rank() <= h:
                return size
    return 0


def ell_bounds(topo: Topology, h: int) -> tuple[int, int]:
    """Closed-form bounds gN(delta-1)+h <= l(P,h) <= g(N(delta-1)+t)+h."""
    lo = topo.g * topo.N * (topo.delta - 1) + h
    hi = topo.g * (topo.N * (topo.delta - 1) + topo.t) + h
    return lo, hi


def construction3_pattern_check(code: MrLrcCode, coords) -> bool:
    """The pc2 decodability certificate: |E| <= ell and |E|-rank(P|_E) <= h."""
    if code.kind != "pc2":
        raise WrongKind("pattern check applies to kind pc2 only")
    coords = sorted(set(coords))
    if len(coords) > code.ell:
        return False
    if not coords:
        return True
    p_mat = code.local_parity_matrix()
    defect = len(coords) - p_mat.restrict_columns(coords).rank()
    return defect <= code.h


# ---------------------------------------------------------------------------
# field-size lower bounds


@dataclass(frozen=True)
class BoundInputs:
    r: int
    delta: int
    t: int
    g: int
    N: int
    h: int

    @property
    def a(self) -> int:
        return self.N * (self.delta - 1)


@dataclass(frozen=True)
class LowerBound:
    """Evaluated field-size lower bound with its regime.

    regime "A" applies when a+2 <= h <= g, regime "B" when
    2 <= h <= min(a+1, g); otherwise "none".  Vacuous bounds (floor < 2)
    are reported, never suppressed: the -4 slack makes small-parameter
    bounds trivially true and hiding them would misrepresent the formula.
    """

    regime: str
    value: Fraction | None
    floor: int | None
    vacuous: bool | None
    asymptotic: int | None

    def to_json_dict(self) -> dict:
        return {
            "regime": self.regime,
            "value": None if self.value is None else str(self.value),
            "floor": self.floor,
            "vacuous": self.vacuous,
            "asymptotic": self.asymptotic,
        }


def lower_bound_field(b: BoundInputs) -> LowerBound:
    """Evaluate the applicable lower-bound formula in exact rationals.

    regime A: t (g/(h-1) - 1) C(r+delta-1-t, delta-1)^N - 4
    regime B: t (g/(h-1) - 1) C(r+floor((h-2)/N)-t, floor((h-2)/N))^N - 4
    """
    a, h, g = b.a, b.h, b.g
    if h < 2 or h > g:
        return LowerBound("none", None, None, None, _asymptotic(b))
    if a + 2 <= h:
        binom = comb(b.r + b.delta - 1 - b.t, b.delta - 1)
        regime = "A"
    else:  # h <= a + 1
        e = (h - 2) // b.N
        binom = comb(b.r + e - b.t, e)
        regime = "B"
    value = Fraction(b.t) * (Fraction(g, h - 1) - 1) * binom ** b.N - 4
    fl = floor(value)
    return LowerBound(regime, value, fl, fl < 2, _asymptotic(b))


def _asymptotic(b: BoundInputs) -> int | None:
    """The Omega argument g t r^min(N(delta-1), N floor((h-2)/N))."""
    if b.h < 2:
        return None
    expo = min(b.N * (b.delta - 1), b.N * ((b.h - 2) // b.N))
    return b.g * b.t * b.r ** expo


# ---------------------------------------------------------------------------
# cross-route helpers used by tests and the CLI


def table1_row(topo: Topology, k: int | None = None, h: int | None = None) -> dict:
    """Field-size summary for all three kinds, marking inapplicable ones."""
    if (k is None) == (h is None):
        raise ValueError("give exactly one of k, h")
    if k is not None:
        h = topo.max_dimension() - k
    else:
        k = topo.max_dimension() - h
    row: dict = {"k": k, "h": h}
    for kind in ("gen", "pc1", "pc2"):
        try:
            plan = (plan_field(topo, kind, k=k) if kind == "gen"
                    else plan_field(topo, kind, h=h))
            row[kind] = {
                "q": plan.q, "m": plan.m,
                "bound_value": plan.bound_value,
                "field_size": plan.field_size,
                "exact": plan.exact,
            }
            if kind == "pc2":
                row[kind]["ell"] = plan.ell
        except ValueError as exc:
            row[kind] = {"inapplicable": str(exc)}
    lo, hi = ell_bounds(topo, h)
    row["ell_bounds"] = [lo, hi]
    row["lower_bound"] = lower_bound_field(
        BoundInputs(r=topo.r, delta=topo.delta, t=topo.t, g=topo.g,
                    N=topo.N, h=h)).to_json_dict()
    return row


def decodable_patterns_agree(code: MrLrcCode, max_size: int | None = None) -> bool:
    """Exhaustively cross-check: a pattern is decodable iff it splits into
    a locally correctable part plus at most h extra erasures.

    Both inclusions are tested; the pattern sizes range over all subsets
    up to max_size (default n - k, beyond which nothing is decodable)."""
    topo = code.topo
    n = topo.n
    limit = n - code.k if max_size is None else max_size
    for size in range(0, n + 1):
        for sel in itertools.combinations(range(1, n + 1), size):
            claimed = is_mr_correctable_pattern(topo, code.h, sel)
            decodable = (size <= limit and
                         erasure_rank_defect(code, sel) == 0)
            if claimed != decodable:
                return False
    return True
