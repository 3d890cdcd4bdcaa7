"""Graph data model: parsing, twin pruning, induced subgraphs, random generation.

Vertices are dense integers 0..n-1.  Adjacency is symmetric and irreflexive.
Graphs are treated as immutable after construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, RangeError


class Graph:
    """Undirected simple graph with dense 0-based vertex identifiers."""

    __slots__ = ("n", "adj", "labels", "_m")

    def __init__(self, n: int, edges=(), labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise RangeError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise ParseError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.adj = adj
        self.labels = list(labels) if labels is not None else None
        self._m = sum(len(a) for a in adj) // 2

    @property
    def m(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self):
        """Edges as sorted (u, v) pairs with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset:
        return frozenset((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass
class TwinReduction:
    """Quotient of a graph by closed-neighborhood equality.

    ``class_of[x]`` is the representative original vertex of x's twin class,
    ``class_members[r]`` lists the class of representative r, and
    ``pruned_id_of[r]`` / ``original_of[i]`` translate between representatives
    and the dense vertex ids of ``pruned``.
    """

    pruned: Graph
    class_of: list
    class_members: dict
    pruned_id_of: dict
    original_of: list


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document: header "n m", then m lines "u v".

    Lines starting with '#' are comments.  Duplicate edges collapse.
    """
    header = None
    edges = []
    declared_m = 0
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError("expected header 'n m'", line=lineno)
            try:
                n, declared_m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("header fields must be integers", line=lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("header fields must be non-negative", line=lineno)
            header = (n, declared_m)
            continue
        if len(parts) != 2:
            raise ParseError("expected edge 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise RangeError(f"vertex index out of range 0..{n - 1}", line=lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=lineno)
        edges.append((u, v))
    if header is None:
        raise ParseError("empty document", line=1)
    if len(edges) != declared_m:
        raise ParseError(f"declared {declared_m} edges, found {len(edges)}", line=1)
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def prune_twins(g: Graph) -> TwinReduction:
    """Collapse twin classes (equal closed neighborhoods) to one vertex each.

    Uses exact grouping on sorted closed neighborhoods, O(n + m) expected.
    """
    groups: dict = {}
    for x in range(g.n):
        key = tuple(sorted(g.adj[x] | {x}))
        groups.setdefault(key, []).append(x)
    reps = sorted(min(members) for members in groups.values())
    pruned_id_of = {r: i for i, r in enumerate(reps)}
    class_of = list(range(g.n))
    class_members = {}
    for members in groups.values():
        r = min(members)
        class_members[r] = sorted(members)
        for x in members:
            class_of[x] = r
    rep_set = set(reps)
    edges = []
    for r in reps:
        for v in g.adj[r]:
            rv = class_of[v]
            if rv in rep_set and rv != r and r < rv:
                edges.append((pruned_id_of[r], pruned_id_of[rv]))
    pruned = Graph(len(reps), set(edges))
    return TwinReduction(
        pruned=pruned,
        class_of=class_of,
        class_members=class_members,
        pruned_id_of=pruned_id_of,
        original_of=reps,
    )


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Induced subgraph on ``vertices``, densely relabeled in sorted order.

    Original ids are retained as string labels so results can be lifted back.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < g.n):
            raise RangeError(f"vertex {v} outside graph range 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(vs)}
    edges = []
    for v in vs:
        for w in g.adj[v]:
            if w in index and v < w:
                edges.append((index[v], index[w]))
    return Graph(len(vs), edges, labels=[str(v) for v in vs])


def intersection_graph(intervals) -> Graph:
    """Intersection graph of closed intervals, via a left-to-right sweep."""
    n = len(intervals)
    order = sorted(range(n), key=lambda i: (intervals[i][0], intervals[i][1]))
    edges = []
    active: list = []  # (right endpoint, vertex), kept unsorted with lazy pruning
    for i in order:
        l, r = intervals[i]
        active = [(ar, av) for ar, av in active if ar >= l]
        edges.extend((av, i) for _, av in active)
        active.append((r, i))
    return Graph(n, edges)


def random_interval_graph(n: int, seed: int, length_spread=2) -> tuple:
    """Deterministically sample n intervals and return (graph, representation).

    Left endpoints are uniform over [0, n] on a 1/16 grid; lengths are uniform
    over [1, max(1, length_spread)].  Same arguments, same output.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    from .representation import IntervalRepresentation

    spread = Fraction(length_spread)
    rng = random.Random(seed)
    q = 16
    max_len_ticks = max(q, int(q * spread))
    intervals = []
    for _ in range(n):
        left = Fraction(rng.randrange(0, n * q + 1), q)
        length = Fraction(rng.randrange(q, max_len_ticks + 1), q)
        intervals.append((left, left + length))
    g = intersection_graph(intervals)
    rep = IntervalRepresentation(intervals={v: intervals[v] for v in range(n)})
    return g, rep
