"""Seeded storage-failure simulator over a constructed code.

Each trial draws an erasure pattern from the configured failure model,
then repairs: first locally, group by group (find a witness repair set,
decode it from r survivors, then the remaining sets of the group, which
are disjoint outside the core and can be read in parallel); if any group
resists local repair the full word goes to the global erasure decoder.

Cost accounting: every engaged repair set reads r symbols (the locality
promise of an (r+delta-1, r) local MDS code); a global decode reads all
surviving symbols.  The parallel width of a trial is the largest number
of repair sets of one group engaged after its witness set was restored.

Failure models:
  uniform_nodes       f distinct coordinates, uniform
  per_group_burst     per group: delta-1 erasures inside one repair set
  adversarial_maximal a maximal locally correctable pattern (uniform per
                      group) plus up to `extra` additional coordinates

All randomness flows from one 64-bit seed through xoshiro256**; reports
are byte-identical across runs with the same seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .constructions import MrLrcCode
from .rng import ALGORITHM, Xoshiro256
from .topology import per_group_maximal_sets
from .verify import decode_erasures

MODELS = ("uniform_nodes", "per_group_burst", "adversarial_maximal")


@dataclass(frozen=True)
class SimConfig:
    trials: int
    model: str
    seed: int
    failures: int | None = None   # uniform_nodes: how many nodes fail
    extra: int | None = None      # adversarial_maximal: max extra erasures

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.model not in MODELS:
            raise ValueError(f"unknown failure model {self.model!r}")
        if self.model == "uniform_nodes" and (self.failures is None
                                              or self.failures < 0):
            raise ValueError("uniform_nodes needs failures >= 0")


@dataclass
class SimReport:
    model: str
    seed: int
    trials: int
    local_repair: int
    global_repair: int
    data_loss: int
    symbols_read: int
    symbols_repaired: int
    max_trial_reads: int
    max_parallel_width: int
    local_parities: int
    baseline_local_parities: int  # kN(delta-1): one core symbol per N sets

    @property
    def reads_per_repaired(self) -> Fraction | None:
        if not self.symbols_repaired:
            return None
        return Fraction(self.symbols_read, self.symbols_repaired)

    def to_json_dict(self) -> dict:
        rpr = self.reads_per_repaired
        return {
            "schema_version": 1,
            "prng": {"algorithm": ALGORITHM, "seed": self.seed},
            "model": self.model,
            "trials": self.trials,
            "outcomes": {
                "local_repair": self.local_repair,
                "global_repair": self.global_repair,
                "data_loss": self.data_loss,
            },
            "symbols_read": self.symbols_read,
            "symbols_repaired": self.symbols_repaired,
            "reads_per_repaired": None if rpr is None else str(rpr),
            "max_trial_reads": self.max_trial_reads,
            "max_parallel_width": self.max_parallel_width,
            "overhead": {
                "local_parities": self.local_parities,
                "baseline_local_parities": self.baseline_local_parities,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False) + "\n"


def _draw_pattern(code: MrLrcCode, cfg: SimConfig, rng: Xoshiro256,
                  per_group) -> set:
    topo = code.topo
    n = topo.n
    if cfg.model == "uniform_nodes":
        return set(rng.sample(range(1, n + 1), min(cfg.failures, n)))
    if cfg.model == "per_group_burst":
        out = set()
        for i in range(topo.g):
            j = rng.randrange(topo.N)
            out.update(rng.sample(sorted(topo.repair[i][j]), topo.delta - 1))
        return out
    # adversarial_maximal
    out = set()
    width = topo.group_width
    for i in range(topo.g):
        cs, _w = per_group[rng.randrange(len(per_group))]
        out.update(c + i * width for c in cs)
    cap = code.h if cfg.extra is None else cfg.extra
    extra = rng.randrange(cap + 1)
    if extra:
        rest = [c for c in range(1, n + 1) if c not in out]
        out.update(rng.sample(rest, min(extra, len(rest))))
    return out


def _local_repair(code: MrLrcCode, erased: set):
    """(fully_repaired, reads, repaired, parallel_width) of the local phase."""
    topo = code.topo
    r, d1 = topo.r, topo.delta - 1
    reads = repaired = width = 0
    remaining = set(erased)
    for i in range(topo.g):
        group_erased = remaining & topo.groups[i]
        if not group_erased:
            continue
        core = topo.cores[i]
        sets = topo.repair[i]
        witness = None
        for j in range(topo.N):
            if len(group_erased & sets[j]) <= d1 and all(
                    len((sets[l] - core) & group_erased) <= d1
                    for l in range(topo.N) if l != j):
                witness = j
                break
        if witness is None:
            continue
        in_witness = group_erased & sets[witness]
        if in_witness:
            reads += r
            repaired += len(in_witness)
            remaining -= in_witness
        parallel = 0
        for l in range(topo.N):
            if l == witness:
                continue
            in_other = remaining & (sets[l] - core)
            if in_other:
                reads += r
                repaired += len(in_other)
                remaining -= in_other
                parallel += 1
        width = max(width, parallel)
    return not remaining, reads, repaired, width


def run_simulation(code: MrLrcCode, cfg: SimConfig) -> SimReport:
    rng = Xoshiro256(cfg.seed)
    per_group = (per_group_maximal_sets(code.topo)
                 if cfg.model == "adversarial_maximal" else None)
    local = glob = loss = 0
    total_reads = total_repaired = 0
    max_reads = max_width = 0
    n = code.topo.n
    for _ in range(cfg.trials):
        erased = _draw_pattern(code, cfg, rng, per_group)
        ok, reads, repaired, width = _local_repair(code, erased)
        if ok:
            local += 1
        else:
            # global decode works on the original pattern, reading every survivor
            word = [0 if i + 1 not in erased else None for i in range(n)]
            reads = n - len(erased)
            decoded = decode_erasures(code, word)
            if decoded is None:
                loss += 1
                repaired = 0
            else:
                glob += 1
                repaired = len(erased)
        total_reads += reads
        total_repaired += repaired
        max_reads = max(max_reads, reads)
        max_width = max(max_width, width)
    topo = code.topo
    return SimReport(model=cfg.model, seed=cfg.seed, trials=cfg.trials,
                     local_repair=local, global_repair=glob, data_loss=loss,
                     symbols_read=total_reads, symbols_repaired=total_repaired,
                     max_trial_reads=max_reads, max_parallel_width=max_width,
                     local_parities=topo.local_parity_count(),
                     baseline_local_parities=code.k * topo.N * (topo.delta - 1))
