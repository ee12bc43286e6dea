"""Canonical labeling and isomorphism testing for small hypergraphs.

Iterative color refinement followed by individualization of the first
non-singleton color class, taking the minimum edge list over all branches.
Exact (no symmetry shortcuts), intended for instances up to n ≈ 16; cost
grows with the automorphism structure, not just n.
"""

from __future__ import annotations

import hashlib
from typing import Sequence

from .hypergraph import Hypergraph

CanonKey = tuple  # (n, sorted relabeled edge multiset)


def _refine(n: int, vertex_edges: list[list[tuple[int, ...]]],
            colors: list[int]) -> list[int]:
    """Stable coloring: repeatedly split classes by incident-edge signatures."""
    while True:
        sigs = []
        for v in range(n):
            row = sorted(
                (len(e), tuple(sorted(colors[u] for u in e if u != v)))
                for e in vertex_edges[v]
            )
            sigs.append((colors[v], tuple(row)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _initial_colors(h: Hypergraph,
                    vertex_edges: list[list[tuple[int, ...]]]) -> list[int]:
    sigs = [(h.degrees[v], tuple(sorted(len(e) for e in vertex_edges[v])))
            for v in range(h.n)]
    ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [ranking[s] for s in sigs]


def _classes(colors: list[int]) -> list[list[int]]:
    by: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        by.setdefault(c, []).append(v)
    return [by[c] for c in sorted(by)]


def _key_for(h: Hypergraph, perm: Sequence[int]) -> CanonKey:
    edges = sorted(tuple(sorted(perm[v] for v in e)) for e in h.edges)
    return (h.n, tuple(edges))


def _search(h: Hypergraph, vertex_edges, colors: list[int]
            ) -> tuple[CanonKey, tuple[int, ...]]:
    for cls in _classes(colors):
        if len(cls) > 1:
            best: tuple[CanonKey, tuple[int, ...]] | None = None
            bump = max(colors) + 1
            for v in cls:
                branched = list(colors)
                branched[v] = bump
                branched = _refine(h.n, vertex_edges, branched)
                cand = _search(h, vertex_edges, branched)
                if best is None or cand[0] < best[0]:
                    best = cand
            assert best is not None
            return best
    # discrete coloring: the coloring is the labeling
    perm = [0] * h.n
    for v, c in enumerate(colors):
        perm[v] = c
    return _key_for(h, perm), tuple(perm)


def canonical_form(h: Hypergraph) -> tuple[CanonKey, tuple[int, ...]]:
    """Return (canonical key, relabeling old→new achieving it).

    Two hypergraphs are isomorphic iff their keys compare equal; keys also
    serve as dictionary keys for dedup and memoization.
    """
    vertex_edges: list[list[tuple[int, ...]]] = [[] for _ in range(h.n)]
    for e in h.edges:
        for v in e:
            vertex_edges[v].append(e)
    colors = _refine(h.n, vertex_edges, _initial_colors(h, vertex_edges))
    return _search(h, vertex_edges, colors)


def canonical_key(h: Hypergraph) -> CanonKey:
    return canonical_form(h)[0]


def canonical_representative(h: Hypergraph) -> Hypergraph:
    key, _ = canonical_form(h)
    return Hypergraph.from_edges(key[0], key[1])


def canonical_digest(h: Hypergraph) -> str:
    """Isomorphism-invariant content hash (golden-file identity)."""
    key = canonical_key(h)
    blob = f"{key[0]}|" + ";".join(",".join(map(str, e)) for e in key[1])
    return hashlib.sha256(blob.encode()).hexdigest()


def are_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(map(len, a.edges)) != sorted(map(len, b.edges)):
        return False
    if sorted(a.degrees) != sorted(b.degrees):
        return False
    return canonical_key(a) == canonical_key(b)
