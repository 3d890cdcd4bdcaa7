"""Maximal cliques of chordal graphs via maximum cardinality search.

Interval graphs are chordal, so a perfect elimination ordering exists and the
maximal cliques (at most n of them, total size O(n + m)) fall out of one
linear sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotChordalError
from .graph import Graph


@dataclass
class CliqueList:
    """All maximal cliques plus, per vertex, the sorted clique indices containing it."""

    cliques: list
    index: dict

    def __len__(self):
        return len(self.cliques)


def mcs_order(g: Graph) -> list:
    """Maximum cardinality search visit order (reverse of the elimination order)."""
    n = g.n
    weight = [0] * n
    visited = [False] * n
    buckets = [[] for _ in range(n + 1)]
    buckets[0] = list(range(n - 1, -1, -1))
    maxw = 0
    order = []
    for _ in range(n):
        # entries go stale when a vertex's weight grows; skip them lazily
        v = None
        while v is None:
            bucket = buckets[maxw]
            while bucket:
                cand = bucket.pop()
                if not visited[cand] and weight[cand] == maxw:
                    v = cand
                    break
            if v is None:
                maxw -= 1
        visited[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not visited[w]:
                weight[w] += 1
                buckets[weight[w]].append(w)
                if weight[w] > maxw:
                    maxw = weight[w]
    return order


def _check_peo(g: Graph, elim: list) -> bool:
    """Verify that ``elim`` is a perfect elimination ordering."""
    pos = [0] * g.n
    for i, v in enumerate(elim):
        pos[v] = i
    # follower test: madj(v) minus its first member must be adjacent to it
    pending: list = [[] for _ in range(g.n)]
    for v in elim:
        for w in pending[v]:
            if w not in g.adj[v]:
                return False
        madj = [w for w in g.adj[v] if pos[w] > pos[v]]
        if madj:
            first = min(madj, key=lambda w: pos[w])
            pending[first].extend(w for w in madj if w != first)
    return True


def maximal_cliques(g: Graph) -> CliqueList:
    """All maximal cliques via a perfect-elimination sweep.

    Raises NotChordalError when no perfect elimination ordering exists.
    """
    if g.n == 0:
        return CliqueList(cliques=[], index={})
    order = mcs_order(g)
    elim = order[::-1]
    if not _check_peo(g, elim):
        raise NotChordalError("graph has no perfect elimination ordering")
    pos = [0] * g.n
    for i, v in enumerate(elim):
        pos[v] = i
    # candidate clique for v is {v} + later neighbors; it is non-maximal iff
    # some u with first later neighbor v satisfies |madj(u)| == |madj(v)| + 1
    madj_size = [0] * g.n
    first_later = [None] * g.n
    for v in elim:
        madj = [w for w in g.adj[v] if pos[w] > pos[v]]
        madj_size[v] = len(madj)
        if madj:
            first_later[v] = min(madj, key=lambda w: pos[w])
    non_maximal = [False] * g.n
    for u in elim:
        f = first_later[u]
        if f is not None and madj_size[u] == madj_size[f] + 1:
            non_maximal[f] = True
    cliques = []
    for v in elim:
        if not non_maximal[v]:
            c = frozenset([v] + [w for w in g.adj[v] if pos[w] > pos[v]])
            cliques.append(c)
    index: dict = {v: [] for v in range(g.n)}
    for ci, c in enumerate(cliques):
        for v in c:
            index[v].append(ci)
    for v in index:
        index[v].sort()
    return CliqueList(cliques=cliques, index=index)


def is_consecutive(clique_index: dict, ordering: list) -> bool:
    """True iff every vertex's cliques occupy consecutive positions in ``ordering``."""
    pos = {ci: i for i, ci in enumerate(ordering)}
    for v, cs in clique_index.items():
        ps = [pos[c] for c in cs]
        if ps and max(ps) - min(ps) + 1 != len(ps):
            return False
    return True
