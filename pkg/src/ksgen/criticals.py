"""Criticality testing and enumeration of critical KS subhypergraphs.

A critical hypergraph is KS but loses the property when any single edge
is removed, i.e. a minimal noncolorable subset (MUS) of the edge
constraint system.  Exhaustive enumeration walks the edge-subset lattice
MARCO-style: maximal unexplored seeds are either maximal colorable sets
(blocked downward) or shrink to a critical (blocked upward), so the loop
terminates exactly when every subset is covered.  Stochastic enumeration
repeats seeded minimization and deduplicates by canonical form.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .canon import canonical_form
from .colorability import is_ks, solve_masks
from .mmp import Hypergraph


class _EdgeOracle:
    """Colorability oracle over edge subsets of a fixed hypergraph."""

    def __init__(self, h: Hypergraph):
        self.h = h
        index = {v: i for i, v in enumerate(h.vertices)}
        self.k = len(index)
        self.masks = []
        for e in h.edges:
            mask = 0
            for v in e:
                mask |= 1 << index[v]
            self.masks.append(mask)
        self.calls = 0

    def check(self, subset: list[int], want_core: bool = False):
        """(is_ks, core_edges|None) for the subhypergraph on these edges."""
        self.calls += 1
        masks = [self.masks[i] for i in subset]
        covers: list[list[int]] = [[] for _ in range(self.k)]
        for pos, mask in enumerate(masks):
            mm = mask
            while mm:
                bit = mm & -mm
                covers[bit.bit_length() - 1].append(pos)
                mm ^= bit
        ones, core = solve_masks(masks, covers, self.k, want_core)
        if ones is not None:
            return False, None
        if core is None:
            return True, None
        return True, [subset[c] for c in core]


def is_critical(h: Hypergraph) -> bool:
    """KS, and every single-edge removal destroys the KS property."""
    if not is_ks(h):
        return False
    oracle = _EdgeOracle(h)
    all_edges = list(range(h.m))
    for e in all_edges:
        ks, _ = oracle.check([i for i in all_edges if i != e])
        if ks:
            return False
    return True


def _minimize_indices(
    oracle: _EdgeOracle, seed: int, use_cores: bool
) -> list[int]:
    rng = random.Random(seed)
    order = list(range(len(oracle.masks)))
    rng.shuffle(order)
    current = set(order)
    for e in order:
        if e not in current:
            continue
        trial = sorted(current - {e})
        ks, core = oracle.check(trial, want_core=use_cores)
        if ks:
            current = set(core) if use_cores else (current - {e})
    return sorted(current)


def minimize(h: Hypergraph, seed: int, use_cores: bool = True) -> Hypergraph:
    """A critical edge-subset of h, deterministic per seed.

    Edge deletions are attempted in seeded random order, keeping those
    that preserve the KS property.  With use_cores (default), a kept
    deletion also discards every edge outside the solver's unsat core,
    which shortcuts straight to a small KS subset.
    """
    oracle = _EdgeOracle(h)
    full = list(range(h.m))
    ks, _ = oracle.check(full)
    if not ks:
        raise ValueError("minimize requires a KS hypergraph")
    return h.restrict(_minimize_indices(oracle, seed, use_cores))


@dataclass
class CriticalClass:
    """One isomorphism class of criticals found in a master."""

    canonical: str
    k: int
    m: int
    representative: Hypergraph
    count: int = 1


@dataclass
class CriticalReport:
    """Result of a critical-enumeration run."""

    classes: list[CriticalClass]
    mode: str
    seed: Optional[int]
    oracle_calls: int
    complete: bool
    runs: int = 0

    def sizes(self) -> list[tuple[int, int]]:
        return sorted((c.k, c.m) for c in self.classes)

    def summary_lines(self) -> list[str]:
        out = [
            f"mode={self.mode} classes={len(self.classes)} "
            f"complete={self.complete} oracle_calls={self.oracle_calls}"
        ]
        for c in sorted(self.classes, key=lambda c: (c.m, c.k, c.canonical)):
            out.append(f"  {c.k}-{c.m}  x{c.count}")
        return out


class _ClassCollector:
    def __init__(self):
        self.by_canon: dict[str, CriticalClass] = {}

    def add(self, sub: Hypergraph) -> None:
        canon = canonical_form(sub)
        got = self.by_canon.get(canon)
        if got is None:
            self.by_canon[canon] = CriticalClass(canon, sub.k, sub.m, sub)
        else:
            got.count += 1

    def classes(self) -> list[CriticalClass]:
        return sorted(
            self.by_canon.values(), key=lambda c: (c.m, c.k, c.canonical)
        )


def _shrink_to_mus(oracle: _EdgeOracle, subset: list[int]) -> list[int]:
    """Deletion-minimize a known-KS subset, using cores to jump."""
    current = set(subset)
    for e in sorted(subset):
        if e not in current:
            continue
        trial = sorted(current - {e})
        ks, core = oracle.check(trial, want_core=True)
        if ks:
            current = set(core)
    return sorted(current)


class _MapLattice:
    """Subset-lattice bookkeeping for MARCO.

    Each found MUS blocks all supersets (clause: some member off); each
    found MSS blocks all subsets (clause: some non-member on).  Seeds are
    models of the accumulated clauses, maximalized greedily; up-blocks
    are monotone under adding elements, so a single-flip-blocked model is
    a maximal unexplored subset.
    """

    def __init__(self, m: int):
        self.m = m
        self.full = (1 << m) - 1 if m else 0
        self.clauses: list[tuple[int, int]] = []  # (positive, negative)

    def block_up(self, subset_mask: int) -> None:
        self.clauses.append((0, subset_mask))

    def block_down(self, subset_mask: int) -> None:
        self.clauses.append((self.full & ~subset_mask, 0))

    def _ok(self, seed: int) -> bool:
        for pos, neg in self.clauses:
            if not (pos & seed) and not (neg & ~seed):
                return False
        return True

    def next_seed(self) -> Optional[int]:
        """A maximal unexplored subset, or None when the lattice is done."""
        model = self._dpll(0, 0)
        if model is None:
            return None
        seed = model
        missing = self.full & ~seed
        while missing:
            bit = missing & -missing
            missing ^= bit
            if self._ok(seed | bit):
                seed |= bit
        return seed

    def _dpll(self, assigned: int, values: int) -> Optional[int]:
        """True-biased DPLL over the block clauses; returns a full model."""
        while True:
            unit = None
            for pos, neg in self.clauses:
                if (pos & values) or (neg & assigned & ~values):
                    continue
                open_bits = (pos | neg) & ~assigned
                if open_bits == 0:
                    return None
                if open_bits & (open_bits - 1) == 0:
                    unit = (open_bits, bool(pos & open_bits))
                    break
            if unit is None:
                break
            bit, make_true = unit
            assigned |= bit
            values = (values | bit) if make_true else (values & ~bit)
        free = self.full & ~assigned
        if free == 0:
            return values
        bit = free & -free
        result = self._dpll(assigned | bit, values | bit)
        if result is not None:
            return result
        return self._dpll(assigned | bit, values & ~bit)


def _mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return out


def _enumerate_exhaustive(
    h: Hypergraph,
    budget_seconds: Optional[float],
    max_classes: Optional[int],
) -> CriticalReport:
    oracle = _EdgeOracle(h)
    lattice = _MapLattice(h.m)
    collector = _ClassCollector()
    deadline = time.monotonic() + budget_seconds if budget_seconds else None
    complete = False
    while True:
        if deadline is not None and time.monotonic() > deadline:
            break
        if max_classes is not None and len(collector.by_canon) >= max_classes:
            break
        seed_mask = lattice.next_seed()
        if seed_mask is None:
            complete = True
            break
        subset = _mask_to_list(seed_mask)
        ks, core = oracle.check(subset, want_core=True)
        if not ks:
            # Maximal unexplored + colorable == maximal colorable set.
            lattice.block_down(seed_mask)
            continue
        mus = _shrink_to_mus(oracle, core if core is not None else subset)
        mus_mask = 0
        for e in mus:
            mus_mask |= 1 << e
        lattice.block_up(mus_mask)
        collector.add(h.restrict(mus))
    return CriticalReport(
        classes=collector.classes(),
        mode="exhaustive",
        seed=None,
        oracle_calls=oracle.calls,
        complete=complete,
    )


def _stochastic_run(h: Hypergraph, seeds: list[int]) -> dict[str, tuple]:
    """Worker payload: minimize per seed, return canon -> (k, m, edges, count)."""
    oracle = _EdgeOracle(h)
    found: dict[str, tuple] = {}
    for seed in seeds:
        sub = h.restrict(_minimize_indices(oracle, seed, use_cores=True))
        canon = canonical_form(sub)
        if canon in found:
            k, m, edges, count, calls = found[canon]
            found[canon] = (k, m, edges, count + 1, oracle.calls)
        else:
            found[canon] = (sub.k, sub.m, sub.edges, 1, oracle.calls)
    return found


def _enumerate_stochastic(
    h: Hypergraph,
    runs: int,
    seed: int,
    budget_seconds: Optional[float],
    workers: int,
) -> CriticalReport:
    seeds = [seed + i for i in range(runs)]
    deadline = time.monotonic() + budget_seconds if budget_seconds else None
    collector = _ClassCollector()
    oracle_calls = 0
    done = 0
    if workers > 1:
        import multiprocessing

        chunk = max(1, min(500, runs // (workers * 4) or 1))
        batches = [seeds[i:i + chunk] for i in range(0, len(seeds), chunk)]
        with multiprocessing.Pool(workers) as pool:
            results = pool.imap_unordered(
                _StochasticTask(h), batches, chunksize=1
            )
            for batch, found in results:
                done += batch
                for canon, (k, m, edges, count, calls) in sorted(found.items()):
                    sub = Hypergraph(edges, dimension=h.dimension, _validate=False)
                    got = collector.by_canon.get(canon)
                    if got is None:
                        collector.by_canon[canon] = CriticalClass(canon, k, m, sub, count)
                    else:
                        got.count += count
                    oracle_calls = max(oracle_calls, calls)
                if deadline is not None and time.monotonic() > deadline:
                    pool.terminate()
                    break
    else:
        oracle = _EdgeOracle(h)
        for s in seeds:
            if deadline is not None and time.monotonic() > deadline:
                break
            sub = h.restrict(_minimize_indices(oracle, s, use_cores=True))
            collector.add(sub)
            done += 1
        oracle_calls = oracle.calls
    return CriticalReport(
        classes=collector.classes(),
        mode="stochastic",
        seed=seed,
        oracle_calls=oracle_calls,
        complete=False,
        runs=done,
    )


class _StochasticTask:
    """Picklable stochastic worker bound to one hypergraph."""

    def __init__(self, h: Hypergraph):
        self.edges = h.edges
        self.dimension = h.dimension

    def __call__(self, seeds: list[int]):
        h = Hypergraph(self.edges, dimension=self.dimension, _validate=False)
        return len(seeds), _stochastic_run(h, seeds)


def enumerate_criticals(
    h: Hypergraph,
    mode: str = "exhaustive",
    runs: int = 1000,
    seed: int = 0,
    budget_seconds: Optional[float] = None,
    max_classes: Optional[int] = None,
    workers: int = 1,
) -> CriticalReport:
    """All (exhaustive) or sampled (stochastic) critical classes of h.

    Exhaustive mode certifies completeness via the MARCO lattice unless
    the budget runs out, in which case the report is flagged incomplete.
    """
    if not is_ks(h):
        raise ValueError("enumerate_criticals requires a KS hypergraph")
    if mode == "exhaustive":
        return _enumerate_exhaustive(h, budget_seconds, max_classes)
    if mode == "stochastic":
        return _enumerate_stochastic(h, runs, seed, budget_seconds, workers)
    raise ValueError(f"unknown mode {mode!r}")
