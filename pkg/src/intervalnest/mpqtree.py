"""MPQ-trees: PQ-trees over the maximal cliques, augmented with vertex sections.

Construction reduces the PQ-tree by every vertex's clique set, then classifies
each vertex into the unique node (and section range, for Q-nodes) whose
subtree cliques are exactly the vertex's cliques.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from . import pqtree
from .cliques import CliqueList, is_consecutive, maximal_cliques
from .errors import CapExceededError, NotIntervalError
from .graph import Graph

LEAF, PNODE, QNODE = "leaf", "P", "Q"


@dataclass
class MpqNode:
    kind: str
    children: list = field(default_factory=list)   # node ids
    section: list = field(default_factory=list)    # leaf / P-node section
    sections: list = field(default_factory=list)   # Q-node: one list per child
    clique: int | None = None                      # leaf only


@dataclass
class MpqTree:
    """Arena-backed MPQ-tree.

    vertex_home maps each vertex to (node id, (i, j)) where (i, j) is the
    0-based inclusive child/section range for Q-nodes and None otherwise.
    """

    nodes: list
    root: int
    vertex_home: dict
    clique_list: CliqueList

    def node(self, nid: int) -> MpqNode:
        return self.nodes[nid]

    def subtree_nodes(self, nid: int) -> list:
        out = []
        stack = [nid]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(reversed(self.nodes[x].children))
        return out

    def subtree_vertices(self, nid: int) -> list:
        """Vertices living in sections of the subtree rooted at nid, sorted."""
        out = []
        for x in self.subtree_nodes(nid):
            nd = self.nodes[x]
            if nd.kind == QNODE:
                seen = set()
                for sec in nd.sections:
                    for v in sec:
                        if v not in seen:
                            seen.add(v)
                            out.append(v)
            else:
                out.extend(nd.section)
        return sorted(out)


@dataclass
class ForcedNestingDag:
    """Edges (x, y) meaning the interval of x is nested in y's in every
    representation; scope is a Q-node id or the whole-tree marker 'tree'."""

    scope: object
    vertices: list
    edges: list


def build_mpq_tree(g: Graph, cliques: CliqueList | None = None) -> MpqTree:
    """MPQ-tree of an interval graph (NotIntervalError / NotChordalError otherwise).

    Intended for twin-pruned input; twins would share sections.
    """
    if cliques is None:
        cliques = maximal_cliques(g)
    k = len(cliques.cliques)
    tree = pqtree.PQTree(k)
    for v in range(g.n):
        tree.reduce(cliques.index[v])
    tree.normalize()
    return _sections_from_pqtree(g, tree, cliques)


def _sections_from_pqtree(g: Graph, tree: pqtree.PQTree, cliques: CliqueList) -> MpqTree:
    nodes: list = []
    id_of: dict = {}
    if tree.root is None:
        return MpqTree(nodes=[], root=-1, vertex_home={}, clique_list=cliques)

    # materialize the arena bottom-up
    order = []
    stack = [tree.root]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(x.children())
    for x in reversed(order):
        if x.kind == pqtree.LEAF:
            nd = MpqNode(kind=LEAF, clique=x.leaf_id)
        elif x.kind == pqtree.PNODE:
            nd = MpqNode(kind=PNODE, children=[id_of[c] for c in x.children()])
        else:
            kids = [id_of[c] for c in x.children()]
            nd = MpqNode(kind=QNODE, children=kids, sections=[[] for _ in kids])
        id_of[x] = len(nodes)
        nodes.append(nd)
    root = id_of[tree.root]

    # frontier positions and per-node leaf ranges
    frontier_order = tree.frontier()
    pos_of_clique = {cid: i for i, cid in enumerate(frontier_order)}
    lo = [0] * len(nodes)
    hi = [0] * len(nodes)
    parent = [-1] * len(nodes)
    for nid in range(len(nodes)):
        for c in nodes[nid].children:
            parent[c] = nid
    for nid in range(len(nodes)):  # arena ids are postorder: children first
        nd = nodes[nid]
        if nd.kind == LEAF:
            lo[nid] = hi[nid] = pos_of_clique[nd.clique]
        else:
            lo[nid] = min(lo[c] for c in nd.children)
            hi[nid] = max(hi[c] for c in nd.children)

    child_at_lo: dict = {}
    child_at_hi: dict = {}
    for nid, nd in enumerate(nodes):
        if nd.kind == QNODE:
            child_at_lo[nid] = {lo[c]: ci for ci, c in enumerate(nd.children)}
            child_at_hi[nid] = {hi[c]: ci for ci, c in enumerate(nd.children)}

    vertex_home: dict = {}
    for v in range(g.n):
        cs = cliques.index[v]
        if not cs:
            raise NotIntervalError(f"vertex {v} lies in no maximal clique")
        ps = [pos_of_clique[c] for c in cs]
        l, r = min(ps), max(ps)
        if r - l + 1 != len(ps):
            raise NotIntervalError("vertex cliques not consecutive after reduction")
        x = id_of[tree.leaves[frontier_order[l]]]
        while not (lo[x] <= l and r <= hi[x]):
            x = parent[x]
        nd = nodes[x]
        if lo[x] == l and hi[x] == r:
            if nd.kind == QNODE:
                for sec in nd.sections:
                    sec.append(v)
                vertex_home[v] = (x, (0, len(nd.children) - 1))
            else:
                nd.section.append(v)
                vertex_home[v] = (x, None)
            continue
        if nd.kind != QNODE:
            raise NotIntervalError("vertex spans a non-aligned P-node range")
        i = child_at_lo[x].get(l)
        j = child_at_hi[x].get(r)
        if i is None or j is None or i > j:
            raise NotIntervalError("vertex spans a non-aligned Q-node range")
        for ci in range(i, j + 1):
            nd.sections[ci].append(v)
        vertex_home[v] = (x, (i, j))

    for nd in nodes:
        nd.section.sort()
        for sec in nd.sections:
            sec.sort()
    return MpqTree(nodes=nodes, root=root, vertex_home=vertex_home, clique_list=cliques)


def frontier(t: MpqTree) -> list:
    """Clique indices in left-to-right leaf order."""
    if t.root < 0:
        return []
    out = []
    stack = [t.root]
    while stack:
        x = stack.pop()
        nd = t.nodes[x]
        if nd.kind == LEAF:
            out.append(nd.clique)
        else:
            stack.extend(reversed(nd.children))
    return out


def enumerate_orderings(t: MpqTree, cap: int = 10**6):
    """Stream every consecutive clique ordering the tree represents.

    Raises CapExceededError once more than ``cap`` orderings exist; duplicates
    cannot occur because orderings are clique-index sequences.
    """
    if t.root < 0:
        yield ()
        return

    def gen(nid):
        nd = t.nodes[nid]
        if nd.kind == LEAF:
            yield (nd.clique,)
        elif nd.kind == PNODE:
            for perm in permutations(nd.children):
                yield from _products(perm)
        else:
            yield from _products(nd.children)
            if len(nd.children) > 1:
                yield from _products(list(reversed(nd.children)))

    def _products(children):
        if not children:
            yield ()
            return
        head, tail = children[0], children[1:]
        for left in gen(head):
            for rest in _products(tail):
                yield left + rest

    count = 0
    for ordering in gen(t.root):
        count += 1
        if count > cap:
            raise CapExceededError(f"more than {cap} consecutive orderings")
        yield list(ordering)


def count_orderings(t: MpqTree) -> int:
    """Number of distinct consecutive orderings the tree represents."""
    from math import factorial

    if t.root < 0:
        return 1

    def cnt(nid):
        nd = t.nodes[nid]
        if nd.kind == LEAF:
            return 1
        sub = 1
        for c in nd.children:
            sub *= cnt(c)
        if nd.kind == PNODE:
            return sub * factorial(len(nd.children))
        return sub * (2 if len(nd.children) > 1 else 1)

    return cnt(t.root)


def section_bounds(t: MpqTree, qid: int, v: int) -> tuple:
    """1-based (left, right) section indices of vertex v relative to Q-node qid.

    Outside the subtree: the full span.  Inside a child subtree: that child's
    position twice.  In s(Q): the leftmost and rightmost containing sections.
    """
    nd = t.node(qid)
    if nd.kind != QNODE:
        raise ValueError("section_bounds requires a Q-node")
    q = len(nd.children)
    home, rng = t.vertex_home[v]
    if home == qid:
        return (rng[0] + 1, rng[1] + 1)
    for ci, c in enumerate(nd.children):
        if home in t.subtree_nodes(c):
            return (ci + 1, ci + 1)
    return (1, q)


def q_spans(t: MpqTree, qid: int) -> dict:
    """0-based inclusive (start, end) section span per vertex of s(Q)."""
    nd = t.node(qid)
    spans: dict = {}
    for i, sec in enumerate(nd.sections):
        for v in sec:
            if v in spans:
                spans[v] = (spans[v][0], i)
            else:
                spans[v] = (i, i)
    return spans


def forced_nesting_dag(t: MpqTree, scope) -> ForcedNestingDag:
    """Forced-nesting DAG: edge (x, y) iff y's section span strictly contains
    x's on both sides.

    Scope: a Q-node id (vertices of s(Q) only), or 'tree' for the global
    relation, where a vertex outside a Q-subtree takes the full span only if
    its cliques cover every clique of that subtree; unrelated vertices never
    take part.
    """
    if scope == "tree":
        clique_pos = {c: i for i, c in enumerate(frontier(t))}
        ranges = {}
        for v in t.vertex_home:
            ps = [clique_pos[c] for c in t.clique_list.index[v]]
            ranges[v] = (min(ps), max(ps))
        edges = set()
        verts = sorted(t.vertex_home)
        for qid, nd in enumerate(t.nodes):
            if nd.kind != QNODE:
                continue
            inside = set(t.subtree_nodes(qid))
            leaf_pos = [clique_pos[t.nodes[x].clique] for x in inside
                        if t.nodes[x].kind == LEAF]
            lo, hi = min(leaf_pos), max(leaf_pos)
            child_of = {}
            for ci, c in enumerate(nd.children):
                for x in t.subtree_nodes(c):
                    child_of[x] = ci
            q = len(nd.children)
            bounds = {}
            for v in verts:
                home, rng = t.vertex_home[v]
                if home == qid:
                    bounds[v] = rng
                elif home in inside:
                    bounds[v] = (child_of[home], child_of[home])
                elif ranges[v][0] <= lo and hi <= ranges[v][1]:
                    bounds[v] = (0, q - 1)
            for x, bx in bounds.items():
                for y, by in bounds.items():
                    if x != y and by[0] < bx[0] and bx[1] < by[1]:
                        edges.add((x, y))
        return ForcedNestingDag(scope="tree", vertices=verts, edges=sorted(edges))
    spans = q_spans(t, scope)
    verts = sorted(spans)
    edges = []
    for x in verts:
        sx = spans[x]
        for y in verts:
            if x == y:
                continue
            sy = spans[y]
            if sy[0] < sx[0] and sx[1] < sy[1]:
                edges.append((x, y))
    return ForcedNestingDag(scope=scope, vertices=verts, edges=sorted(edges))


def dump_tree(t: MpqTree, g: Graph | None = None) -> str:
    """Indented text dump, one node per line."""
    if t.root < 0:
        return "(empty)\n"
    lines = []

    def fmt_set(vs):
        return "{" + ",".join(str(v) for v in vs) + "}"

    def walk(nid, depth):
        nd = t.nodes[nid]
        pad = "  " * depth
        if nd.kind == LEAF:
            lines.append(f"{pad}L #{nd.clique} {fmt_set(nd.section)}")
        elif nd.kind == PNODE:
            lines.append(f"{pad}P {fmt_set(nd.section)}")
        else:
            body = " | ".join(fmt_set(sec) for sec in nd.sections)
            lines.append(f"{pad}Q [{body}]")
        for c in nd.children:
            walk(c, depth + 1)

    walk(t.root, 0)
    return "\n".join(lines) + "\n"


def check_mpq_invariants(t: MpqTree, g: Graph) -> None:
    """Assert the structural section invariants; test helper."""
    for nid in (t.subtree_nodes(t.root) if t.root >= 0 else []):
        nd = t.nodes[nid]
        if nd.kind == PNODE:
            assert len(nd.children) >= 2, "P-node with fewer than 2 children"
        elif nd.kind == QNODE:
            assert len(nd.children) >= 3, "Q-node with fewer than 3 children"
            for sec in nd.sections:
                assert sec, "empty Q-node section"
            for a, b in zip(nd.sections, nd.sections[1:]):
                assert set(a) & set(b), "consecutive sections do not intersect"
            for v, (home, rng) in t.vertex_home.items():
                if home == nid:
                    i, j = rng
                    for ci, sec in enumerate(nd.sections):
                        assert (v in sec) == (i <= ci <= j), "non-consecutive sections"
    # after twin pruning no two vertices occupy exactly the same sections
    closed = {tuple(sorted(g.adj[v] | {v})) for v in range(g.n)}
    if len(closed) == g.n:
        homes: dict = {}
        for v, key in t.vertex_home.items():
            homes.setdefault(key, []).append(v)
        for key, vs in homes.items():
            assert len(vs) == 1, f"vertices {vs} share sections {key}"
    ordering = frontier(t)
    assert is_consecutive(t.clique_list.index, ordering), "frontier not consecutive"
