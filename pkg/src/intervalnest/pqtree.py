"""PQ-tree with Booth-Lueker style reduction.

The tree stores all orderings of a ground set in which every reduced subset
appears consecutively.  Leaves are ground elements.  P-node children may be
permuted arbitrarily; Q-node children may only be reversed as a whole.

Node bookkeeping: P children live in an insertion-ordered dict used as a set,
Q children in a doubly-linked sibling list.  Every node keeps a parent
pointer; splices re-parent the moved children, which amortizes because a
spliced child's old Q-node is consumed.
"""

from __future__ import annotations

from .errors import NotIntervalError

LEAF, PNODE, QNODE = 0, 1, 2

EMPTY, FULL, PARTIAL = 0, 1, 2

_CANNOT = "pertinent subset cannot be made consecutive"


class _Node:
    __slots__ = ("kind", "parent", "pchildren", "left", "right",
                 "first", "last", "qsize", "leaf_id")

    def __init__(self, kind, leaf_id=None):
        self.kind = kind
        self.parent = None
        self.pchildren = {} if kind == PNODE else None
        self.left = None      # sibling links when parent is a Q-node
        self.right = None
        self.first = None     # Q-node child list endpoints
        self.last = None
        self.qsize = 0
        self.leaf_id = leaf_id

    def q_children(self):
        c = self.first
        while c is not None:
            yield c
            c = c.right

    def children(self):
        if self.kind == PNODE:
            return list(self.pchildren)
        if self.kind == QNODE:
            return list(self.q_children())
        return []


class PQTree:
    """PQ-tree over ground elements 0..k-1."""

    def __init__(self, k: int):
        self.k = k
        self.leaves = [_Node(LEAF, leaf_id=i) for i in range(k)]
        if k == 0:
            self.root = None
        elif k == 1:
            self.root = self.leaves[0]
        else:
            root = _Node(PNODE)
            for lf in self.leaves:
                root.pchildren[lf] = None
                lf.parent = root
            self.root = root

    # ----- structural helpers -------------------------------------------

    def _attach_to_p(self, parent, child):
        parent.pchildren[child] = None
        child.parent = parent

    def _q_append(self, q, child):
        child.parent = q
        child.left = q.last
        child.right = None
        if q.last is not None:
            q.last.right = child
        q.last = child
        if q.first is None:
            q.first = child
        q.qsize += 1

    def _replace_child(self, old, new):
        """Put ``new`` where ``old`` sits under old's parent (or at the root)."""
        parent = old.parent
        new.parent = parent
        if parent is None:
            self.root = new
            return
        if parent.kind == PNODE:
            del parent.pchildren[old]
            parent.pchildren[new] = None
        else:
            new.left = old.left
            new.right = old.right
            if old.left is not None:
                old.left.right = new
            else:
                parent.first = new
            if old.right is not None:
                old.right.left = new
            else:
                parent.last = new
        old.parent = None

    def _group(self, nodes):
        """A single node standing for ``nodes``: the node itself or a fresh P-node."""
        if len(nodes) == 1:
            return nodes[0]
        p = _Node(PNODE)
        for x in nodes:
            p.pchildren[x] = None
            x.parent = p
        return p

    # ----- reduction ------------------------------------------------------

    def reduce(self, elements) -> None:
        """Restrict the tree so ``elements`` is consecutive in every frontier.

        Raises NotIntervalError when impossible.
        """
        S = set(elements)
        if len(S) <= 1 or len(S) >= self.k:
            return

        pertinent_leaves = [self.leaves[e] for e in S]

        def depth_of(x):
            d = 0
            while x.parent is not None:
                x = x.parent
                d += 1
            return d

        lca = pertinent_leaves[0]
        dl = depth_of(lca)
        for lf in pertinent_leaves[1:]:
            a, da = lca, dl
            b, db = lf, depth_of(lf)
            while da > db:
                a = a.parent
                da -= 1
            while db > da:
                b = b.parent
                db -= 1
            while a is not b:
                a, b = a.parent, b.parent
                da -= 1
            lca, dl = a, da

        # gather the pertinent subtree: paths leaf -> lca
        pertinent_children: dict = {}
        visited = set(pertinent_leaves)
        for lf in pertinent_leaves:
            x = lf
            while x is not lca:
                p = x.parent
                pertinent_children.setdefault(p, []).append(x)
                if p in visited:
                    break
                visited.add(p)
                x = p

        # bottom-up: a node is matched once all its pertinent children are done
        pending = {node: len(kids) for node, kids in pertinent_children.items()}
        label = {lf: FULL for lf in pertinent_leaves}
        full_end: dict = {}  # PARTIAL Q-node -> 'first' | 'last' (its full side)
        ready = list(pertinent_leaves)
        while ready:
            x = ready.pop()
            p = x.parent
            pending[p] -= 1
            if pending[p] == 0 and p is not lca:
                self._match_nonroot(p, pertinent_children[p], label, full_end)
                ready.append(p)
        self._match_root(lca, pertinent_children[lca], label, full_end)

    # ----- template matching ---------------------------------------------

    @staticmethod
    def _split(pertinent, label):
        fulls = [c for c in pertinent if label[c] == FULL]
        partials = [c for c in pertinent if label[c] == PARTIAL]
        return fulls, partials

    def _match_nonroot(self, x, pertinent, label, full_end):
        fulls, partials = self._split(pertinent, label)
        if x.kind == QNODE:
            self._match_q(x, fulls, partials, label, full_end, root=False)
            return
        assert x.kind == PNODE
        nchildren = len(x.pchildren)
        if len(partials) == 0 and len(fulls) == nchildren:
            label[x] = FULL                                          # P1
            return
        if len(partials) == 0:
            # P3: mixed full/empty -> partial pseudo Q [empty-group, full-group]
            for c in fulls:
                del x.pchildren[c]
            empties = list(x.pchildren)
            x.pchildren.clear()
            egroup = self._group(empties)
            fgroup = self._group(fulls)
            x.kind = QNODE
            x.pchildren = None
            self._q_append(x, egroup)
            self._q_append(x, fgroup)
            label[x] = PARTIAL
            full_end[x] = "last"
            return
        if len(partials) == 1:
            # P5: x becomes the partial child's Q extended with its own groups
            q = partials[0]
            for c in fulls:
                del x.pchildren[c]
            del x.pchildren[q]
            empties = list(x.pchildren)
            x.pchildren.clear()
            x.kind = QNODE
            x.pchildren = None
            if empties:
                self._q_append(x, self._group(empties))
            self._append_partial_children(x, q, reverse=(full_end[q] == "first"))
            if fulls:
                self._q_append(x, self._group(fulls))
            label[x] = PARTIAL
            full_end[x] = "last"
            return
        raise NotIntervalError(_CANNOT)

    def _match_root(self, x, pertinent, label, full_end):
        fulls, partials = self._split(pertinent, label)
        if x.kind == QNODE:
            self._match_q(x, fulls, partials, label, full_end, root=True)
            return
        assert x.kind == PNODE
        nchildren = len(x.pchildren)
        if len(partials) == 0:
            if len(fulls) < nchildren and len(fulls) >= 2:
                # P2: group the full children under one new P child
                for c in fulls:
                    del x.pchildren[c]
                self._attach_to_p(x, self._group(fulls))
            return
        if len(partials) <= 2:
            # P4 / P6: merge fulls (and second partial) into one Q child
            for c in fulls:
                del x.pchildren[c]
            for q in partials:
                del x.pchildren[q]
                q.parent = None
            merged = _Node(QNODE)
            self._append_partial_children(merged, partials[0],
                                          reverse=(full_end[partials[0]] == "first"))
            if fulls:
                self._q_append(merged, self._group(fulls))
            if len(partials) == 2:
                self._append_partial_children(merged, partials[1],
                                              reverse=(full_end[partials[1]] == "last"))
            if x.pchildren:
                self._attach_to_p(x, merged)
            else:
                self._replace_child(x, merged)
            return
        raise NotIntervalError(_CANNOT)

    def _append_partial_children(self, q, partial, reverse):
        """Append the children of a dissolving partial Q-node onto q."""
        kids = list(partial.q_children())
        if reverse:
            kids.reverse()
        for c in kids:
            self._q_append(q, c)
        partial.first = partial.last = None
        partial.qsize = 0

    def _match_q(self, x, fulls, partials, label, full_end, root):
        """Non-root pattern (up to reversal): E* P? F* with the full run at one
        end.  Root pattern: E* P? F* P? E*.  Only pertinent children and their
        immediate neighbours are examined."""
        if len(partials) > (2 if root else 1):
            raise NotIntervalError(_CANNOT)
        pert = set(fulls) | set(partials)
        if len(fulls) == x.qsize:
            label[x] = FULL
            return
        anchor = fulls[0] if fulls else partials[0]
        run = [anchor]
        c = anchor.left
        while c is not None and c in pert:
            run.append(c)
            c = c.left
        left_stop = c
        run.reverse()
        c = anchor.right
        while c is not None and c in pert:
            run.append(c)
            c = c.right
        right_stop = c
        if len(run) != len(pert):
            raise NotIntervalError(_CANNOT)
        for q in partials:
            if q is not run[0] and q is not run[-1]:
                raise NotIntervalError(_CANNOT)
        if len(partials) == 2 and run[0] is run[-1]:
            raise NotIntervalError(_CANNOT)
        touches_left = left_stop is None
        touches_right = right_stop is None
        if root:
            self._splice_runs(x, run, partials, full_end, s_end=None)
            return
        # non-root: the block must claim one end of the child list
        if not (touches_left or touches_right):
            raise NotIntervalError(_CANNOT)
        if touches_left and touches_right:
            s_end = "last" if (partials and partials[0] is run[0]) else "first"
        elif touches_left:
            s_end = "first"
        else:
            s_end = "last"
        if partials:
            q = partials[0]
            ok = (q is run[-1]) if s_end == "first" else (q is run[0])
            if not ok:
                raise NotIntervalError(_CANNOT)
        self._splice_runs(x, run, partials, full_end, s_end=s_end)
        label[x] = PARTIAL
        full_end[x] = s_end

    def _splice_runs(self, x, run, partials, full_end, s_end):
        """Dissolve partial children at the run boundaries into x's child list.

        s_end None means orient full sides toward the run interior (root
        case); otherwise full sides face the claimed end of the child list.
        """
        for q in partials:
            if s_end is None:
                want_full_side = "right" if q is run[0] else "left"
            else:
                want_full_side = "left" if s_end == "first" else "right"
            kids = list(q.q_children())
            has_full_last = full_end[q] == "last"
            if (want_full_side == "right") != has_full_last:
                kids.reverse()
            for kchild in kids:
                kchild.parent = x
            for a, b in zip(kids, kids[1:]):
                a.right = b
                b.left = a
            first_k, last_k = kids[0], kids[-1]
            first_k.left = q.left
            last_k.right = q.right
            if q.left is not None:
                q.left.right = first_k
            else:
                x.first = first_k
            if q.right is not None:
                q.right.left = last_k
            else:
                x.last = last_k
            x.qsize += len(kids) - 1
            q.first = q.last = None
            q.qsize = 0
            q.parent = None

    # ----- inspection ------------------------------------------------------

    def normalize(self) -> None:
        """Collapse degenerate nodes (unary inner nodes, binary Q-nodes).

        Reductions should not leave any behind; this is a safety net keeping
        downstream invariants simple."""
        if self.root is None:
            return
        stack = [(self.root, False)]
        while stack:
            x, expanded = stack.pop()
            if x.kind == LEAF:
                continue
            if not expanded:
                stack.append((x, True))
                stack.extend((c, False) for c in x.children())
                continue
            if x.kind == QNODE:
                kids = list(x.q_children())
                if len(kids) == 1:
                    kids[0].left = kids[0].right = None
                    self._replace_child(x, kids[0])
                elif len(kids) == 2:
                    p = _Node(PNODE)
                    self._replace_child(x, p)
                    for c in kids:
                        c.left = c.right = None
                        self._attach_to_p(p, c)
            elif len(x.pchildren) == 1:
                self._replace_child(x, next(iter(x.pchildren)))

    def frontier(self) -> list:
        """Ground elements in left-to-right leaf order."""
        if self.root is None:
            return []
        out = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            if x.kind == LEAF:
                out.append(x.leaf_id)
            else:
                stack.extend(reversed(x.children()))
        return out
