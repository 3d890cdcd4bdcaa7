"""Brute-force ground truth for minimum nesting and subtree triples.

Deliberately naive and independent of the MPQ machinery: consecutive clique
orderings are enumerated by backtracking over clique placements, and the
nesting of a cleaned representation is read off the clique ranges directly
(an interval is nested in another iff its range is strictly inside on both
sides, so per-ordering nesting is a longest chain in a 2D dominance order).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations

from .cliques import maximal_cliques
from .errors import CapExceededError
from .graph import Graph


class GadgetKind(Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"


DEFAULT_CAP = 10**6


def consecutive_orderings(g: Graph, cap: int = DEFAULT_CAP, cliques=None):
    """Yield every consecutive ordering of the maximal cliques of g.

    Backtracking with pruning: once a vertex's clique run has started and
    stopped, no later clique may contain it.  Raises CapExceededError after
    ``cap`` orderings."""
    if cliques is None:
        cliques = maximal_cliques(g)
    k = len(cliques.cliques)
    if k == 0:
        yield []
        return
    count = 0
    total_of = [len(cliques.index[v]) for v in range(g.n)]
    started = [0] * g.n   # cliques of v already placed
    prefix: list = []
    used = [False] * k

    def can_place(c):
        if not prefix:
            return True
        last = cliques.cliques[prefix[-1]]
        cset = cliques.cliques[c]
        for v in cset:
            # a vertex whose run was interrupted may not reappear
            if started[v] > 0 and v not in last:
                return False
        for v in last:
            # an unfinished run breaking now can never complete
            if started[v] < total_of[v] and v not in cset:
                return False
        return True

    def extend():
        nonlocal count
        if len(prefix) == k:
            count += 1
            if count > cap:
                raise CapExceededError(f"more than {cap} consecutive orderings")
            yield list(prefix)
            return
        for c in range(k):
            if used[c] or not can_place(c):
                continue
            used[c] = True
            for v in cliques.cliques[c]:
                started[v] += 1
            prefix.append(c)
            yield from extend()
            prefix.pop()
            for v in cliques.cliques[c]:
                started[v] -= 1
            used[c] = False

    yield from extend()


def ordering_nesting(g: Graph, ordering: list, cliques=None) -> dict:
    """Per-vertex nesting depth of the cleaned representation of ``ordering``.

    Containment holds iff the clique range is strictly inside on both sides,
    so depths follow from a longest-chain sweep over (left, right) ranges.
    """
    if cliques is None:
        cliques = maximal_cliques(g)
    pos = {c: i for i, c in enumerate(ordering)}
    ranges = []
    for v in range(g.n):
        ps = [pos[c] for c in cliques.index[v]]
        ranges.append((min(ps), max(ps)))
    # contained ranges first, so each vertex sees its nested chains completed
    order = sorted(range(g.n), key=lambda v: (-ranges[v][0], ranges[v][1]))
    depth = {}
    for v in order:
        lv, rv = ranges[v]
        best = 0
        for u in order:
            if u == v:
                continue
            lu, ru = ranges[u]
            if lv < lu and ru < rv and depth.get(u, 0) > best:
                best = depth[u]
        depth[v] = best + 1
    return depth


def brute_nesting(g: Graph, cap: int = DEFAULT_CAP) -> int:
    """Minimum nesting over all consecutive orderings of the maximal cliques."""
    if g.n == 0:
        return 0
    cliques = maximal_cliques(g)
    best = None
    for ordering in consecutive_orderings(g, cap=cap, cliques=cliques):
        depth = ordering_nesting(g, ordering, cliques=cliques)
        nu = max(depth.values(), default=0)
        if best is None or nu < best:
            best = nu
            if best <= 1:
                break
    return best if best is not None else 0


def all_permutation_nesting(g: Graph) -> int:
    """Second-level oracle: minimum over ALL clique permutations passing the
    consecutivity test, with no backtracking pruning.  Small graphs only."""
    cliques = maximal_cliques(g)
    k = len(cliques.cliques)
    if k == 0:
        return 0
    best = None
    for perm in permutations(range(k)):
        pos = {c: i for i, c in enumerate(perm)}
        consecutive = True
        for v in range(g.n):
            ps = sorted(pos[c] for c in cliques.index[v])
            if ps and ps[-1] - ps[0] + 1 != len(ps):
                consecutive = False
                break
        if not consecutive:
            continue
        depth = ordering_nesting(g, list(perm), cliques=cliques)
        nu = max(depth.values(), default=0)
        if best is None or nu < best:
            best = nu
    return best if best is not None else 0


def attach_gadget(g: Graph, kind: GadgetKind) -> Graph:
    """Attach the probe vertices that turn nesting into the triple components.

    ALPHA: one vertex adjacent to all of g, its interval pinned from both
    sides by two pendant 2-vertex paths.  BETA: same with one pendant path,
    leaving one side free.  GAMMA: two adjacent all-of-g vertices, each pinned
    from one (opposite) side by its own pendant path.
    """
    n = g.n
    edges = list(g.edges())
    if kind == GadgetKind.ALPHA:
        u = n
        p1, p2, q1, q2 = n + 1, n + 2, n + 3, n + 4
        edges += [(v, u) for v in range(n)]
        edges += [(p1, p2), (p2, u), (q1, q2), (q2, u)]
        return Graph(n + 5, edges)
    if kind == GadgetKind.BETA:
        u = n
        p1, p2 = n + 1, n + 2
        edges += [(v, u) for v in range(n)]
        edges += [(p1, p2), (p2, u)]
        return Graph(n + 3, edges)
    u, w = n, n + 1
    p1, p2, q1, q2 = n + 2, n + 3, n + 4, n + 5
    edges += [(v, u) for v in range(n)]
    edges += [(v, w) for v in range(n)]
    edges += [(u, w), (p1, p2), (p2, u), (q1, q2), (q2, w)]
    return Graph(n + 6, edges)


@dataclass
class Triple:
    alpha: int
    beta: int
    gamma: int

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)


def brute_triple(g: Graph, cap: int = DEFAULT_CAP) -> Triple:
    """Triple (alpha, beta, gamma) via the three gadget graphs."""
    a = brute_nesting(attach_gadget(g, GadgetKind.ALPHA), cap=cap) - 1
    b = brute_nesting(attach_gadget(g, GadgetKind.BETA), cap=cap) - 1
    c = brute_nesting(attach_gadget(g, GadgetKind.GAMMA), cap=cap) - 1
    return Triple(alpha=a, beta=b, gamma=c)
