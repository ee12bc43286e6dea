"""Exact minimum-transversal solvers.

Two independent routes: `tau_bruteforce` enumerates vertex subsets in size
order (the oracle), `tau_bnb` is a branch-and-bound over edge bitmasks with
subset-edge cleanup, unit propagation and a disjoint-edge-packing lower
bound.  Constrained variants support forced and forbidden vertices.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .hypergraph import Hypergraph, Transversal

DEFAULT_NODE_BUDGET = 10**8
BRUTEFORCE_CAP = 24
NODE_BUDGET_ENV = "TRANSVERSAL_LAB_NODE_BUDGET"


class InstanceTooLarge(ValueError):
    """Instance exceeds the brute-force vertex cap."""


class InstanceTooHard(RuntimeError):
    """Branch-and-bound exceeded its node budget."""


class Infeasible(ValueError):
    """The constraints leave some edge impossible to hit."""


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    wall_ms: float


@dataclass(frozen=True)
class SolveResult:
    tau: int
    witness: Transversal
    stats: SolveStats


def _resolve_budget(node_budget: int | None) -> int:
    if node_budget is not None:
        return node_budget
    env = os.environ.get(NODE_BUDGET_ENV)
    return int(env) if env else DEFAULT_NODE_BUDGET


def _mask_bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def tau_bruteforce(h: Hypergraph) -> SolveResult:
    """Exact tau by subset enumeration in size order.

    The witness is the lexicographically smallest minimum transversal
    (combinations enumerate in lex order).  Hard cap n <= 24.
    """
    if h.n > BRUTEFORCE_CAP:
        raise InstanceTooLarge(f"brute force capped at n={BRUTEFORCE_CAP}")
    start = time.perf_counter()
    masks = h.edge_masks
    checked = 0
    for k in range(h.n + 1):
        for combo in combinations(range(h.n), k):
            checked += 1
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all(em & mask for em in masks):
                wall = (time.perf_counter() - start) * 1e3
                return SolveResult(k, Transversal.certify(h, combo),
                                   SolveStats(checked, wall))
    raise AssertionError("full vertex set always covers")


def minimum_transversals(h: Hypergraph) -> tuple[int, list[int]]:
    """All minimum transversals as bitmasks (brute force; oracle-side)."""
    if h.n > BRUTEFORCE_CAP:
        raise InstanceTooLarge(f"brute force capped at n={BRUTEFORCE_CAP}")
    masks = h.edge_masks
    for k in range(h.n + 1):
        found = []
        for combo in combinations(range(h.n), k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all(em & mask for em in masks):
                found.append(mask)
        if found:
            return k, found
    raise AssertionError("unreachable")


# -- branch and bound --------------------------------------------------------


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int) -> None:
        self.left = nodes

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise InstanceTooHard("node budget exceeded")


def _cleanup(masks: list[int]) -> list[int]:
    # drop edges that contain another edge; keep one copy of duplicates
    masks = sorted(masks, key=lambda m: bin(m).count("1"))
    kept: list[int] = []
    for m in masks:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _packing_bound(masks: list[int]) -> int:
    taken = 0
    count = 0
    for m in masks:  # already sorted small-first by _cleanup
        if not m & taken:
            taken |= m
            count += 1
    return count


def _greedy_cover(masks: list[int]) -> int:
    live = list(masks)
    chosen = 0
    while live:
        counts: dict[int, int] = {}
        for m in live:
            for v in _mask_bits(m):
                counts[v] = counts.get(v, 0) + 1
        best_v = max(counts, key=lambda v: (counts[v], -v))
        bit = 1 << best_v
        chosen |= bit
        live = [m for m in live if not m & bit]
    return chosen


def _bnb_core(masks: list[int], budget: _Budget) -> tuple[int, int]:
    """Exact minimum hitting set over bitmask edges: (size, vertex mask).

    Assumes every mask is nonzero.  Branches on a smallest live edge,
    partitioning by the first chosen vertex (earlier-tried vertices are
    removed from the subtree).
    """
    masks = _cleanup(masks)
    if not masks:
        return 0, 0
    best_mask = _greedy_cover(masks)
    best = [bin(best_mask).count("1"), best_mask]

    def degrees_of(live: list[int]) -> dict[int, int]:
        counts: dict[int, int] = {}
        for m in live:
            for v in _mask_bits(m):
                counts[v] = counts.get(v, 0) + 1
        return counts

    def dfs(live: list[int], chosen: int, size: int) -> None:
        budget.spend()
        # unit propagation: single-vertex edges force their vertex
        while True:
            forced = 0
            for m in live:
                if m & (m - 1) == 0:
                    forced |= m
            if not forced:
                break
            chosen |= forced
            size += bin(forced).count("1")
            live = [m for m in live if not m & forced]
        if not live:
            if size < best[0]:
                best[0] = size
                best[1] = chosen
            return
        if size + 1 >= best[0]:
            return
        live = _cleanup(live)
        counts = degrees_of(live)
        max_deg = max(counts.values())
        lower = max(_packing_bound(live), -(-len(live) // max_deg))
        if size + lower >= best[0]:
            return
        edge = min(live, key=lambda m: bin(m).count("1"))
        order = sorted(_mask_bits(edge), key=lambda v: -counts[v])
        banned = 0
        for v in order:
            bit = 1 << v
            sub = []
            dead = False
            for m in live:
                if m & bit:
                    continue
                m &= ~banned
                if not m:
                    dead = True
                    break
                sub.append(m)
            if not dead:
                dfs(sub, chosen | bit, size + 1)
            banned |= bit
        return

    dfs(masks, 0, 0)
    return best[0], best[1]


def _apply_constraints(h: Hypergraph, must_include: frozenset[int],
                       forbidden: frozenset[int]) -> list[int]:
    overlap_set = must_include & forbidden
    if overlap_set:
        raise Infeasible(f"vertices both forced and forbidden: {sorted(overlap_set)}")
    for v in must_include | forbidden:
        if not 0 <= v < h.n:
            raise ValueError(f"vertex {v} out of range")
    must_mask = 0
    for v in must_include:
        must_mask |= 1 << v
    forb_mask = 0
    for v in forbidden:
        forb_mask |= 1 << v
    live = []
    for em in h.edge_masks:
        if em & must_mask:
            continue
        em &= ~forb_mask
        if not em:
            raise Infeasible("an edge consists of forbidden vertices only")
        live.append(em)
    return live


def tau_bnb(h: Hypergraph, *, must_include: Iterable[int] = (),
            forbidden: Iterable[int] = (), canonical: bool = False,
            node_budget: int | None = None) -> SolveResult:
    """Exact constrained tau via branch and bound.

    `must_include` vertices are part of every solution; `forbidden` ones are
    never used.  With `canonical`, the witness is the lexicographically
    smallest optimum (costs extra constrained solves).
    """
    start = time.perf_counter()
    must = frozenset(must_include)
    forb = frozenset(forbidden)
    budget = _Budget(_resolve_budget(node_budget))
    live = _apply_constraints(h, must, forb)
    size, mask = _bnb_core(live, budget)
    tau = size + len(must)
    vertices = set(must) | set(_mask_bits(mask))
    if canonical:
        vertices = _lex_min_witness(h, tau, must, forb, budget)
    spent = _resolve_budget(node_budget) - budget.left
    wall = (time.perf_counter() - start) * 1e3
    return SolveResult(tau, Transversal.certify(h, vertices),
                       SolveStats(spent, wall))


def _lex_min_witness(h: Hypergraph, tau: int, must: frozenset[int],
                     forb: frozenset[int], budget: _Budget) -> set[int]:
    """Lexicographically smallest optimum containing `must`, avoiding `forb`."""
    chosen: set[int] = set()
    for v in range(h.n):
        if len(chosen) == tau:
            break
        if v in forb:
            continue
        if v in must:
            chosen.add(v)
            continue
        trial_must = must | chosen | {v}
        trial_forb = forb | {u for u in range(v) if u not in chosen}
        try:
            live = _apply_constraints(h, frozenset(trial_must),
                                      frozenset(trial_forb))
        except Infeasible:
            continue
        size, _ = _bnb_core(live, budget)
        if size + len(trial_must) == tau:
            chosen.add(v)
    remaining = [e for e in h.edges if not chosen.intersection(e)]
    assert not remaining and len(chosen) == tau, "lex search must reach an optimum"
    return chosen


def tau_with_pair_targets(h: Hypergraph, targets: Sequence[Iterable[int]],
                          *, node_budget: int | None = None
                          ) -> SolveResult | None:
    """A minimum transversal meeting every target pair, or None.

    The targets are appended as extra 2-edges; a solution of the augmented
    instance with unchanged tau is exactly a minimum transversal of `h`
    hitting every pair.
    """
    if not targets or len(targets) > 3:
        raise ValueError("between one and three target pairs required")
    pairs = []
    for t in targets:
        p = tuple(sorted(set(t)))
        if len(p) != 2:
            raise ValueError(f"target {t!r} is not a vertex pair")
        pairs.append(p)
    base = tau_bnb(h, node_budget=node_budget)
    augmented = h.add_edges(pairs)
    result = tau_bnb(augmented, node_budget=node_budget)
    if result.tau != base.tau:
        return None
    witness = Transversal.certify(h, result.witness.vertices)
    return SolveResult(base.tau, witness, result.stats)


# -- proof-derived peeling ---------------------------------------------------


class PeelResult:
    """Outcome of max-degree peeling: removed set, remainder, index map."""

    __slots__ = ("removed", "reduced", "old_to_new")

    def __init__(self, removed: tuple[int, ...], reduced: Hypergraph,
                 old_to_new: dict[int, int]) -> None:
        self.removed = removed
        self.reduced = reduced
        self.old_to_new = old_to_new

    def __iter__(self):
        return iter((self.removed, self.reduced))


def greedy_peel(h: Hypergraph, degree_threshold: int) -> PeelResult:
    """Strip maximum-degree vertices (ties: lowest index) while any degree
    reaches the threshold; returns the removed set and the reduction."""
    if degree_threshold < 1:
        raise ValueError("degree threshold must be at least 1")
    live = list(h.edges)
    removed: list[int] = []
    while live:
        deg = [0] * h.n
        for e in live:
            for v in e:
                deg[v] += 1
        top = max(deg)
        if top < degree_threshold:
            break
        x = deg.index(top)
        removed.append(x)
        live = [e for e in live if x not in e]
    reduced, remap = h.reduce(removed, ())
    return PeelResult(tuple(removed), reduced, remap)
