"""Shared test infrastructure.

Exhaustive corpus: every connected interval graph with up to 8 vertices, one
representative per isomorphism class.  Interval graphs are enumerated as
canonical endpoint diagrams (sequences of left/right endpoint events), then
deduplicated by invariant fingerprint plus an exact bitmask isomorphism test.

Canonical diagram rules (each interval graph keeps at least one diagram):
within a run of consecutive left endpoints, intervals close in opening order;
within a run of consecutive right endpoints, closes are sorted by opening
time.  Both only reorder interchangeable endpoints.
"""

from __future__ import annotations

from functools import lru_cache

from intervalnest.graph import Graph


def graph_to_masks(g: Graph):
    return tuple(sum(1 << w for w in g.adj[v]) for v in range(g.n))


def masks_to_graph(n, masks):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
    return Graph(n, edges)


def _connected(n, masks):
    if n == 0:
        return True
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        rest = masks[v] & ~seen
        while rest:
            w = (rest & -rest).bit_length() - 1
            seen |= 1 << w
            stack.append(w)
            rest &= rest - 1
    return seen == (1 << n) - 1


def fingerprint(n, masks):
    degs = [bin(m).count("1") for m in masks]
    ndegs = tuple(sorted(tuple(sorted(degs[w] for w in range(n) if masks[v] >> w & 1))
                         for v in range(n)))
    tri = []
    for v in range(n):
        t = 0
        rest = masks[v]
        while rest:
            w = (rest & -rest).bit_length() - 1
            t += bin(masks[v] & masks[w]).count("1")
            rest &= rest - 1
        tri.append(t // 2)
    return (n, sum(degs) // 2, tuple(sorted(degs)), ndegs, tuple(sorted(tri)))


def are_isomorphic(n, masks1, masks2) -> bool:
    """Exact isomorphism test by backtracking over degree-compatible maps."""
    deg1 = [bin(m).count("1") for m in masks1]
    deg2 = [bin(m).count("1") for m in masks2]
    if sorted(deg1) != sorted(deg2):
        return False
    order = sorted(range(n), key=lambda v: -deg1[v])
    mapping = [-1] * n
    used = 0

    def rec(i):
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used >> w & 1 or deg2[w] != deg1[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (masks1[v] >> u & 1) != (masks2[w] >> mapping[u] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used |= 1 << w
                if rec(i + 1):
                    return True
                used &= ~(1 << w)
        return False

    return rec(0)


def canonical_diagrams(n):
    """Yield adjacency masks of all n-interval graphs, one per canonical diagram."""
    # events: opens carry a group id (run of consecutive opens); a close picks,
    # per group, only the first-in-first-out remaining member; inside a run of
    # closes, opening times must increase
    open_time = [0] * n
    close_time = [0] * n
    group_of = [0] * n

    def rec(time, opened, closed, groups, last_was_open, last_closed_open_time, out):
        # groups: list of lists of open interval ids (FIFO), one per open run
        if closed == n:
            masks = [0] * n
            for u in range(n):
                for v in range(u + 1, n):
                    if open_time[v] < close_time[u] and open_time[u] < close_time[v]:
                        masks[u] |= 1 << v
                        masks[v] |= 1 << u
            out.append(tuple(masks))
            return
        if opened < n:
            iv = opened
            open_time[iv] = time
            if last_was_open and groups:
                groups[-1].append(iv)
            else:
                groups.append([iv])
            rec(time + 1, opened + 1, closed, groups, True, -1, out)
            if len(groups[-1]) == 1:
                groups.pop()
            else:
                groups[-1].pop()
        if opened > closed:
            for gi, grp in enumerate(groups):
                if not grp:
                    continue
                iv = grp[0]
                if not last_was_open and open_time[iv] < last_closed_open_time:
                    continue  # closes inside a run must follow opening order
                close_time[iv] = time
                rest = grp[1:]
                groups2 = groups[:gi] + ([rest] if rest else []) + groups[gi + 1:]
                rec(time + 1, opened, closed + 1, groups2, False, open_time[iv], out)

    out: list = []
    if n == 0:
        return [()]
    rec(0, 0, 0, [], False, -1, out)
    return out


@lru_cache(maxsize=None)
def connected_interval_graphs(max_n: int):
    """All connected interval graphs with 1..max_n vertices up to isomorphism,
    as Graph objects (deterministic order)."""
    result = []
    for n in range(1, max_n + 1):
        reps: dict = {}
        for masks in canonical_diagrams(n):
            if not _connected(n, masks):
                continue
            fp = fingerprint(n, masks)
            bucket = reps.setdefault(fp, [])
            if not any(are_isomorphic(n, masks, other) for other in bucket):
                bucket.append(masks)
        for fp in sorted(reps):
            for masks in reps[fp]:
                result.append(masks_to_graph(n, masks))
    return result


def random_corpus(count, max_n, seed, min_n=2):
    """Seeded stream of random interval graphs (with their representations)."""
    import random

    from intervalnest.graph import random_interval_graph

    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randrange(min_n, max_n + 1)
        spread = rng.choice([1, 2, 3, 5])
        out.append(random_interval_graph(n, seed * 100003 + i, spread))
    return out


def p_figure_graph():
    """Three disjoint claws joined to one universal vertex.

    Minimum nesting 3; triples agree level by level: leaves (1,0,0), claw
    nodes (2,1,1), root (3,2,2).
    """
    edges = []
    w = 0
    vid = 1
    for _ in range(3):
        c, l1, l2, l3 = vid, vid + 1, vid + 2, vid + 3
        vid += 4
        edges += [(c, l1), (c, l2), (c, l3)]
        edges += [(w, c), (w, l1), (w, l2), (w, l3)]
    return Graph(13, edges)


def q_figure_graph():
    """A single Q-node with eight subtrees whose triple is (4,3,4).

    Child 5 (1-based) holds a claw plus an isolated vertex, triple (2,1,2);
    flipping it is the unique way to reach nesting 4.  Returns (graph, spans,
    names) where spans gives the 1-based section span of each named cover
    vertex and names maps 'x1'..'x7' to vertex ids.
    """
    x = {f"x{i}": i - 1 for i in range(1, 8)}
    spans = {"x1": (1, 8), "x2": (1, 7), "x3": (5, 7), "x4": (2, 6),
             "x5": (3, 5), "x6": (4, 6), "x7": (7, 8)}
    t_by_pos = {1: 7, 2: 8, 3: 9, 4: 10, 6: 11, 7: 12, 8: 13}
    c, l1, l2, l3, k = 14, 15, 16, 17, 18
    edges = []
    names = sorted(x)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            sa, sb = spans[a], spans[b]
            if max(sa[0], sb[0]) <= min(sa[1], sb[1]):
                edges.append((x[a], x[b]))
    for pos, t in t_by_pos.items():
        for a in names:
            s, e = spans[a]
            if s <= pos <= e:
                edges.append((t, x[a]))
    for v in (c, l1, l2, l3, k):
        for a in names:
            s, e = spans[a]
            if s <= 5 <= e:
                edges.append((v, x[a]))
    edges += [(c, l1), (c, l2), (c, l3)]
    return Graph(19, edges), spans, x
