"""Minimum nesting of interval graphs by dynamic programming over the MPQ-tree.

Each subtree gets a triple (alpha, beta, gamma): alpha is its minimum nesting;
beta the nesting increase when the subtree sits at a side (one end free);
gamma the increase on the second side once the first is optimized.  Leaves are
immediate, P-nodes reduce to a savable-children count, and Q-nodes evaluate
longest chains through the forced-nesting order of the section vertices, with
per-child orientation chosen greedily.

A minimal representation (nesting alpha, right-open depth beta, left-open
depth gamma) is rebuilt from the recorded choices: for a P-node the chosen
side children go leftmost (as is) and rightmost (mirrored); for a Q-node each
child keeps or mirrors its own minimal representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .cliques import CliqueList, maximal_cliques
from .errors import StaleAnnotationError
from .graph import Graph, TwinReduction, prune_twins
from .mpqtree import LEAF, PNODE, QNODE, MpqTree, build_mpq_tree, q_spans
from .representation import IntervalRepresentation, cleaned_representation

NEG = float("-inf")


class Triple(NamedTuple):
    alpha: int
    beta: int
    gamma: int

    def bounds_ok(self) -> bool:
        return self.alpha - 1 <= self.beta <= self.gamma <= self.alpha


@dataclass
class DpAnnotation:
    """Everything needed to audit the DP and replay a witness representation."""

    n: int
    edge_signature: frozenset
    twins: TwinReduction
    pruned: Graph
    cliques: CliqueList
    tree: MpqTree
    triple_of: dict = field(default_factory=dict)        # node id -> Triple
    side_choice: dict = field(default_factory=dict)      # P-node id -> (s, t)
    flip_choice: dict = field(default_factory=dict)      # Q-node id -> [bool]
    orientation: dict = field(default_factory=dict)      # Q-node id -> 'keep'|'reverse'

    @property
    def root_triple(self) -> Triple:
        return self.triple_of[self.tree.root]


def leaf_triple(section) -> Triple:
    """(0,0,0) for an empty section, (1,0,0) for a singleton."""
    if len(section) > 1:
        raise ValueError("leaf section larger than one vertex; twins not pruned")
    return Triple(1, 0, 0) if section else Triple(0, 0, 0)


def p_node_triple(section, child_triples) -> tuple:
    """Triple of a P-node plus the chosen side children (s, t), in O(p).

    A child is savable when beta = alpha - 1; only savable children can sit at
    a side without raising the nesting.
    """
    p = len(child_triples)
    if p < 2:
        raise ValueError("P-node needs at least two children")
    if len(section) > 1:
        raise ValueError("P-node section larger than one vertex; twins not pruned")
    alphas = [t.alpha for t in child_triples]
    a_max = max(alphas)
    maxers = [i for i, a in enumerate(alphas) if a == a_max]
    second = max((a for a in alphas if a < a_max), default=0)
    savable = [child_triples[i].beta == child_triples[i].alpha - 1 for i in range(p)]
    all_max_savable = all(savable[i] for i in maxers)

    gamma = a_max
    if len(maxers) >= 2:
        beta = a_max
    else:
        j = maxers[0]
        beta = max(child_triples[j].beta, second)
    if not section:
        alpha = a_max
    elif all_max_savable and len(maxers) <= 2:
        alpha = a_max
    else:
        alpha = a_max + 1

    if section and all_max_savable and len(maxers) <= 2:
        if len(maxers) == 2:
            s, t = maxers[0], maxers[1]
        else:
            s = maxers[0]
            t = 0 if s != 0 else 1
    else:
        def key(i):
            other = a_max if (len(maxers) >= 2 or i not in maxers) else second
            return max(child_triples[i].beta, other)

        s = min(range(p), key=lambda i: (key(i), i))
        t = 0 if s != 0 else 1
    return Triple(alpha, beta, gamma), (s, t)


def p_node_triple_naive(section, child_triples) -> Triple:
    """Direct min-over-choices evaluation of the P-node formulas, O(p^2).

    Cross-check for the O(p) computation.
    """
    p = len(child_triples)
    alphas = [t.alpha for t in child_triples]
    betas = [t.beta for t in child_triples]
    gamma = max(alphas)
    beta = min(max([betas[s]] + [alphas[i] for i in range(p) if i != s])
               for s in range(p))
    if not section:
        alpha = max(alphas)
    else:
        alpha = min(
            1 + max([betas[s], betas[t]] + [alphas[i] for i in range(p) if i not in (s, t)])
            for s in range(p) for t in range(p) if s != t
        )
    return Triple(alpha, beta, gamma)


# ----- Q-node machinery -----------------------------------------------------


class _SparseMax:
    """Static range-max over a list, O(1) query after O(n log n) build."""

    def __init__(self, values):
        self.table = [list(values)]
        n = len(values)
        length = 1
        while 2 * length <= n:
            prev = self.table[-1]
            row = [max(prev[i], prev[i + length]) for i in range(n - 2 * length + 1)]
            self.table.append(row)
            length *= 2
        self.n = n

    def query(self, lo, hi):
        """Max over values[lo..hi] inclusive; NEG when empty."""
        if lo > hi:
            return NEG
        span = hi - lo + 1
        level = span.bit_length() - 1
        row = self.table[level]
        return max(row[lo], row[hi - (1 << level) + 1])


class _SuffixMaxFenwick:
    """Point update, max over suffix of 1..size (0 means empty)."""

    def __init__(self, size):
        self.size = size
        self.data = [0] * (size + 2)

    def update(self, i, value):
        i = self.size - i + 1  # reverse index so suffix becomes prefix
        while i <= self.size:
            if self.data[i] < value:
                self.data[i] = value
            i += i & (-i)

    def query_from(self, i):
        i = self.size - i + 1
        best = 0
        while i > 0:
            if self.data[i] > best:
                best = self.data[i]
            i -= i & (-i)
        return best


_TARGETS = ("A", "BL", "BR", "G")


class _QData:
    """Per-Q-node chain statistics, flip independent.

    For each target sink, W[x] counts the section vertices on the best chain
    from x upward whose top vertex may extend into that sink (0 = none).
    upper[i] / lower[i] aggregate W over vertices starting / ending at child i
    (-1 = none); int_entry is the best interior-subtree entry alpha_j + W[x].
    """

    def __init__(self, spans, alphas, q):
        self.q = q
        self.spans = spans
        verts = sorted(spans, key=lambda v: (spans[v][0], -spans[v][1], v))
        self.verts = verts
        ends = sorted({spans[v][1] for v in verts})
        end_rank = {e: i + 1 for i, e in enumerate(ends)}
        table = _SparseMax(alphas) if alphas else None
        self.W = {}
        self.upper = {}
        self.lower = {}
        self.int_entry = {}
        for target in _TARGETS:
            if target == "A":
                qual = lambda s, e: True
            elif target == "BL":
                qual = lambda s, e: s > 0
            elif target == "BR":
                qual = lambda s, e: e < q - 1
            else:
                qual = lambda s, e: not (s == 0 and e == q - 1)
            fen = _SuffixMaxFenwick(len(ends))
            W = {}
            i = 0
            while i < len(verts):
                j = i
                start = spans[verts[i]][0]
                while j < len(verts) and spans[verts[j]][0] == start:
                    j += 1
                batch = verts[i:j]
                for v in batch:
                    s, e = spans[v]
                    # containers already inserted: start' < start and end' > end
                    via = fen.query_from(end_rank[e] + 1) if end_rank[e] < len(ends) else 0
                    w = 0
                    if qual(s, e):
                        w = 1
                    if via:
                        w = max(w, 1 + via)
                    W[v] = w
                for v in batch:
                    if W[v]:
                        fen.update(end_rank[spans[v][1]], W[v])
                i = j
            upper = [-1] * q
            lower = [-1] * q
            int_best = NEG
            for v in verts:
                s, e = spans[v]
                if W[v]:
                    if W[v] > upper[s]:
                        upper[s] = W[v]
                    if W[v] > lower[e]:
                        lower[e] = W[v]
                    if e - s >= 2:
                        ia = table.query(s + 1, e - 1)
                        if ia + W[v] > int_best:
                            int_best = ia + W[v]
            self.W[target] = W
            self.upper[target] = upper
            self.lower[target] = lower
            self.int_entry[target] = int_best


def _contribution(triple: Triple, flipped: bool, start_agg, end_agg):
    """Best chain through one child under one orientation (NEG = none).

    start_agg pairs with the child's right-open depth (chains escaping its
    left side), end_agg with its left-open depth.
    """
    toward_right = triple.gamma if flipped else triple.beta
    toward_left = triple.beta if flipped else triple.gamma
    best = NEG
    if start_agg >= 0:
        best = toward_right + start_agg
    if end_agg >= 0:
        cand = toward_left + end_agg
        if cand > best:
            best = cand
    return best


def q_node_target_values(tree: MpqTree, nid: int, child_triples) -> dict:
    """The four optimized sink values of a Q-node: 'A' (enclosed on both
    sides), 'BL' / 'BR' (one side free, left or right), 'G' (each side free
    once)."""
    _, _, _, targets = _q_node_solve(tree, nid, child_triples)
    return targets


def q_node_triple(tree: MpqTree, nid: int, child_triples) -> tuple:
    """Triple of a Q-node plus witness per-child flips and whole-node
    orientation, in O(q + |s(Q)| log |s(Q)|).

    Chains run from a child representation through nested section vertices
    into one of the probe sinks; each child independently keeps or mirrors its
    minimal representation, pairing its two open depths with the two chain
    families leaving it.
    """
    triple, flips, orientation, _ = _q_node_solve(tree, nid, child_triples)
    return triple, flips, orientation


def _q_node_solve(tree: MpqTree, nid: int, child_triples) -> tuple:
    nd = tree.node(nid)
    q = len(nd.children)
    if q < 3:
        raise ValueError("Q-node needs at least three children")
    spans = q_spans(tree, nid)
    alphas = [t.alpha for t in child_triples]
    data = _QData(spans, alphas, q)

    def target_value(target, flips=None):
        """Value of one sink; with flips None each child picks its better
        orientation (the greedy choice is per-child independent)."""
        upper, lower = data.upper[target], data.lower[target]
        if target == "A":
            best = max(alphas)
        elif target == "BL":
            best = max(alphas[1:])
        elif target == "BR":
            best = max(alphas[:-1])
        else:
            best = max(alphas)
        if data.int_entry[target] > best:
            best = data.int_entry[target]
        for i in range(q):
            s_agg = upper[i]
            e_agg = lower[i]
            if target == "BL" and i == 0:
                s_agg = max(s_agg, 0)
            if target == "BR" and i == q - 1:
                e_agg = max(e_agg, 0)
            if flips is None:
                contrib = min(_contribution(child_triples[i], False, s_agg, e_agg),
                              _contribution(child_triples[i], True, s_agg, e_agg))
            else:
                contrib = _contribution(child_triples[i], flips[i], s_agg, e_agg)
            if contrib > best:
                best = contrib
        return best

    alpha = target_value("A")
    beta_left = target_value("BL")
    beta_right = target_value("BR")
    beta = min(beta_left, beta_right)
    gamma = target_value("G")
    orientation = "keep" if beta_left <= beta_right else "reverse"
    side, other = ("BL", "BR") if orientation == "keep" else ("BR", "BL")

    # witness: per child, an orientation meeting all three bounds at once
    flips = []
    for i in range(q):
        chosen = None
        for flipped in (False, True):
            ok = True
            for target, bound in (("A", alpha), (side, beta), (other, gamma)):
                s_agg = data.upper[target][i]
                e_agg = data.lower[target][i]
                if target == "BL" and i == 0:
                    s_agg = max(s_agg, 0)
                if target == "BR" and i == q - 1:
                    e_agg = max(e_agg, 0)
                if _contribution(child_triples[i], flipped, s_agg, e_agg) > bound:
                    ok = False
                    break
            if ok:
                chosen = flipped
                break
        if chosen is None:
            raise AssertionError("no orientation satisfies the witness bounds")
        flips.append(chosen)
    targets = {"A": alpha, "BL": beta_left, "BR": beta_right, "G": gamma}
    return Triple(alpha, beta, gamma), flips, orientation, targets


def q_node_evaluate(spans: dict, child_triples, q: int, flips) -> tuple:
    """Slow direct evaluation of one orientation vector.

    Returns (per-vertex chain depths over s(Q), sink values dict).
    """
    verts = sorted(spans, key=lambda v: (spans[v][1] - spans[v][0], v))
    alphas = [t.alpha for t in child_triples]
    nu = {}
    for v in verts:
        s, e = spans[v]
        tr_s, tr_e = child_triples[s], child_triples[e]
        cand = [
            (tr_s.gamma if flips[s] else tr_s.beta) + 1,
            (tr_e.beta if flips[e] else tr_e.gamma) + 1,
        ]
        cand.extend(alphas[j] + 1 for j in range(s + 1, e))
        cand.extend(nu[u] + 1 for u in verts
                    if spans[u][0] > s and spans[u][1] < e)
        nu[v] = max(cand)
    vals = {
        "A": max(alphas + [nu[v] for v in verts]),
        "BL": max(alphas[1:]
                  + [child_triples[0].gamma if flips[0] else child_triples[0].beta]
                  + [nu[v] for v in verts if spans[v][0] > 0]),
        "BR": max(alphas[:-1]
                  + [child_triples[-1].beta if flips[-1] else child_triples[-1].gamma]
                  + [nu[v] for v in verts if spans[v][1] < q - 1]),
        "G": max(alphas + [nu[v] for v in verts
                           if not (spans[v][0] == 0 and spans[v][1] == q - 1)]),
    }
    return nu, vals


def q_node_exhaustive(spans: dict, child_triples, q: int) -> dict:
    """Minimum of each sink value over all 2^q orientation vectors.

    Independent slow evaluator used to validate the greedy choice.
    """
    best = {t: None for t in _TARGETS}
    for mask in range(1 << q):
        flips = [(mask >> i) & 1 == 1 for i in range(q)]
        _, vals = q_node_evaluate(spans, child_triples, q, flips)
        for t in _TARGETS:
            if best[t] is None or vals[t] < best[t]:
                best[t] = vals[t]
    return best


# ----- whole-graph driver ----------------------------------------------------


def min_nesting(g: Graph) -> tuple:
    """Minimum nesting of an interval graph plus the replayable annotation.

    Raises NotChordalError / NotIntervalError for non-interval input.
    """
    twins = prune_twins(g)
    pruned = twins.pruned
    cliques = maximal_cliques(pruned)
    tree = build_mpq_tree(pruned, cliques)
    ann = DpAnnotation(n=g.n, edge_signature=g.edge_set(), twins=twins,
                       pruned=pruned, cliques=cliques, tree=tree)
    if tree.root < 0:
        ann.triple_of[-1] = Triple(0, 0, 0)
        return 0, ann
    for nid in range(len(tree.nodes)):  # arena ids put children before parents
        nd = tree.nodes[nid]
        if nd.kind == LEAF:
            ann.triple_of[nid] = leaf_triple(nd.section)
        elif nd.kind == PNODE:
            kids = [ann.triple_of[c] for c in nd.children]
            triple, (s, t) = p_node_triple(nd.section, kids)
            ann.triple_of[nid] = triple
            ann.side_choice[nid] = (s, t)
        else:
            kids = [ann.triple_of[c] for c in nd.children]
            triple, flips, orientation = q_node_triple(tree, nid, kids)
            ann.triple_of[nid] = triple
            ann.flip_choice[nid] = flips
            ann.orientation[nid] = orientation
    return ann.root_triple.alpha, ann


def witness_ordering(ann: DpAnnotation) -> list:
    """Clique ordering of the pruned graph realizing the root triple."""
    tree = ann.tree
    if tree.root < 0:
        return []

    def arrange(nid, flipped):
        nd = tree.node(nid)
        if nd.kind == LEAF:
            return [nd.clique]
        if nd.kind == PNODE:
            s, t = ann.side_choice[nid]
            plan = [(nd.children[s], False)]
            plan += [(c, False) for i, c in enumerate(nd.children) if i not in (s, t)]
            plan += [(nd.children[t], True)]
        else:
            flips = ann.flip_choice[nid]
            plan = list(zip(nd.children, flips))
            if ann.orientation[nid] == "reverse":
                plan = [(c, not f) for c, f in reversed(plan)]
        if flipped:
            plan = [(c, not f) for c, f in reversed(plan)]
        out = []
        for c, f in plan:
            out.extend(arrange(c, f))
        return out

    return arrange(tree.root, False)


def build_minimal_representation(g: Graph, ann: DpAnnotation) -> IntervalRepresentation:
    """Replay the recorded choices into a representation of g achieving the
    root triple: nesting alpha, right-open depth beta, left-open depth gamma."""
    if ann.n != g.n or ann.edge_signature != g.edge_set():
        raise StaleAnnotationError("annotation was computed for a different graph")
    if g.n == 0:
        return IntervalRepresentation(intervals={})
    ordering = witness_ordering(ann)
    pruned_rep = cleaned_representation(ann.pruned, ordering, cliques=ann.cliques)
    intervals = {}
    for v in range(g.n):
        rep_vertex = ann.twins.pruned_id_of[ann.twins.class_of[v]]
        intervals[v] = pruned_rep.intervals[rep_vertex]
    return IntervalRepresentation(intervals=intervals, ordering_used=ordering)


def recognize_k_nested(g: Graph, k: int) -> bool:
    """True iff g is an interval graph with minimum nesting at most k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    from .errors import NotIntervalError

    try:
        nu, _ = min_nesting(g)
    except NotIntervalError:
        return False
    return nu <= k
