"""Finite hypergraphs: vertex range + edge multiset, and the basic surgery ops.

Vertices are contiguous 0-based indices.  Edges are sets of vertices,
stored as sorted tuples; the edge list is a multiset (equal edges may
repeat) and insertion order is preserved.  All values are immutable;
every operation returns a fresh instance.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class ZeroEdgeError(ValueError):
    """A reduction step would leave an edge with no vertices."""


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...] = ()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = []
        for e in self.edges:
            verts = sorted(e)
            if not verts:
                raise ValueError("empty edge")
            if len(set(verts)) != len(verts):
                raise ValueError(f"repeated vertex within edge {e}")
            if verts[0] < 0 or verts[-1] >= self.n:
                raise ValueError(f"edge {e} out of vertex range [0, {self.n})")
            normalized.append(tuple(verts))
        object.__setattr__(self, "edges", tuple(normalized))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError("labels length must equal vertex count")
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]],
                   labels: Iterable[str] | None = None) -> "Hypergraph":
        return cls(n, tuple(tuple(e) for e in edges),
                   None if labels is None else tuple(labels))

    # -- basic counts ------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def e_count(self, size: int) -> int:
        """Number of edges of the given size, counting multiplicity."""
        return sum(1 for e in self.edges if len(e) == size)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        d = [0] * self.n
        for e in self.edges:
            for v in e:
                d[v] += 1
        return tuple(d)

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")
        return self.degrees[v]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0) if self.n else 0

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0) if self.n else 0

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        """Edges as vertex bitmasks, aligned with `edges`."""
        out = []
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << v
            out.append(m)
        return tuple(out)

    def edge_sets(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in self.edges]

    # -- equality is multiset equality, order-insensitive ------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and sorted(self.edges) == sorted(other.edges)

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.edges))))

    def digest(self) -> str:
        """Content hash of the instance (order-insensitive edge multiset)."""
        h = hashlib.sha256()
        h.update(f"{self.n}\n".encode())
        for e in sorted(self.edges):
            h.update(" ".join(map(str, e)).encode())
            h.update(b"\n")
        return h.hexdigest()

    # -- structure queries -------------------------------------------------

    def overlap(self, e1: int, e2: int) -> bool:
        """True iff the two edges share at least two vertices."""
        if e1 == e2:
            raise ValueError("overlap requires distinct edge indices")
        if not (0 <= e1 < self.m and 0 <= e2 < self.m):
            raise ValueError("edge index out of range")
        return bin(self.edge_masks[e1] & self.edge_masks[e2]).count("1") >= 2

    def components(self) -> list["Component"]:
        """Connected components; isolated vertices become edgeless singletons.

        Components are ordered by their smallest original vertex, and each
        carries the tuple of original indices (position = new index).
        """
        parent = list(range(self.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            r = find(e[0])
            for v in e[1:]:
                rv = find(v)
                if rv != r:
                    parent[rv] = r
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        parts = sorted(groups.values(), key=lambda g: g[0])
        out = []
        for verts in parts:
            remap = {old: new for new, old in enumerate(verts)}
            sub_edges = [tuple(remap[v] for v in e) for e in self.edges
                         if find(e[0]) == find(verts[0])]
            sub_labels = (tuple(self.labels[v] for v in verts)
                          if self.labels is not None else None)
            out.append(Component(
                Hypergraph.from_edges(len(verts), sub_edges, sub_labels),
                tuple(verts)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- surgery -----------------------------------------------------------

    def reduce(self, x: Iterable[int], y: Iterable[int]
               ) -> tuple["Hypergraph", dict[int, int]]:
        """Drop every edge meeting X, strip Y from the rest, delete X ∪ Y.

        Returns the reduced hypergraph plus the old→new index map for the
        surviving vertices.  Raises ZeroEdgeError if stripping Y would leave
        an empty edge.
        """
        xs, ys = set(x), set(y)
        for s in (xs, ys):
            for v in s:
                if not 0 <= v < self.n:
                    raise ValueError(f"vertex {v} out of range")
        gone = xs | ys
        survivors = []
        for e in self.edges:
            if any(v in xs for v in e):
                continue
            stripped = tuple(v for v in e if v not in ys)
            if not stripped:
                raise ZeroEdgeError(f"edge {e} reduced to nothing")
            survivors.append(stripped)
        kept = [v for v in range(self.n) if v not in gone]
        remap = {old: new for new, old in enumerate(kept)}
        new_edges = [tuple(remap[v] for v in e) for e in survivors]
        new_labels = (tuple(self.labels[v] for v in kept)
                      if self.labels is not None else None)
        return Hypergraph.from_edges(len(kept), new_edges, new_labels), remap

    def drop_isolated(self) -> tuple["Hypergraph", dict[int, int]]:
        """Remove all vertices of degree zero; edges are untouched."""
        kept = [v for v in range(self.n) if self.degrees[v] > 0]
        remap = {old: new for new, old in enumerate(kept)}
        new_edges = [tuple(remap[v] for v in e) for e in self.edges]
        new_labels = (tuple(self.labels[v] for v in kept)
                      if self.labels is not None else None)
        return Hypergraph.from_edges(len(kept), new_edges, new_labels), remap

    def subset_edge_cleanup(self) -> "Hypergraph":
        """Delete every edge that contains another edge (duplicates: keep one).

        The minimum transversal size is unchanged: any vertex hitting the
        contained edge hits the container too.
        """
        masks = self.edge_masks
        keep = []
        for i, f in enumerate(masks):
            dominated = False
            for j, e in enumerate(masks):
                if i == j:
                    continue
                if e & f == e and (e != f or j < i):
                    dominated = True
                    break
            if not dominated:
                keep.append(self.edges[i])
        return Hypergraph.from_edges(self.n, keep, self.labels)

    def remove_edges(self, indices: Iterable[int]) -> "Hypergraph":
        """Drop the edges at the given positions; vertices are kept."""
        drop = set(indices)
        for i in drop:
            if not 0 <= i < self.m:
                raise ValueError(f"edge index {i} out of range")
        return Hypergraph.from_edges(
            self.n, (e for i, e in enumerate(self.edges) if i not in drop),
            self.labels)

    def add_edges(self, extra: Iterable[Iterable[int]]) -> "Hypergraph":
        return Hypergraph.from_edges(
            self.n, tuple(self.edges) + tuple(tuple(e) for e in extra),
            self.labels)


class Component(NamedTuple):
    hypergraph: Hypergraph
    vertices: tuple[int, ...]  # new index -> original index


@dataclass(frozen=True)
class Transversal:
    """A vertex set certified to hit every edge of a specific instance."""

    vertices: frozenset[int]
    instance_digest: str

    @classmethod
    def certify(cls, h: Hypergraph, vertices: Iterable[int]) -> "Transversal":
        vs = frozenset(vertices)
        for v in vs:
            if not 0 <= v < h.n:
                raise ValueError(f"vertex {v} out of range")
        for e in h.edges:
            if not vs.intersection(e):
                raise ValueError(f"edge {e} is not hit")
        return cls(vs, h.digest())

    def valid_for(self, h: Hypergraph) -> bool:
        return (self.instance_digest == h.digest()
                and all(self.vertices.intersection(e) for e in h.edges))


# -- text format (.hg) -----------------------------------------------------
#
# line 1: `n m`; then m lines of ascending vertex indices; `#` comments and
# blank lines are ignored.  An optional `# labels: ...` comment round-trips
# vertex labels.

def parse_hg(text: str) -> Hypergraph:
    labels: tuple[str, ...] | None = None
    rows: list[list[int]] = []
    header: tuple[int, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("labels:"):
                labels = tuple(body[len("labels:"):].split())
            continue
        if not line:
            continue
        try:
            values = [int(t) for t in line.split()]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if header is None:
            if len(values) != 2:
                raise ValueError(f"line {lineno}: expected `n m` header")
            header = (values[0], values[1])
        else:
            rows.append(values)
    if header is None:
        raise ValueError("missing `n m` header")
    n, m = header
    if len(rows) != m:
        raise ValueError(f"header declares {m} edges, found {len(rows)}")
    if labels is not None and len(labels) != n:
        labels = None
    return Hypergraph.from_edges(n, rows, labels)


def format_hg(h: Hypergraph, canonical: bool = False) -> str:
    edges = sorted(h.edges) if canonical else h.edges
    lines = [f"{h.n} {h.m}"]
    if h.labels is not None:
        lines.append("# labels: " + " ".join(h.labels))
    lines.extend(" ".join(map(str, e)) for e in edges)
    return "\n".join(lines) + "\n"


def read_hg(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hg(fh.read())


def write_hg(h: Hypergraph, path, canonical: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hg(h, canonical=canonical))
