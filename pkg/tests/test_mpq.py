"""MPQ-tree construction, ordering enumeration, sections, forced nestings."""

import random
from itertools import permutations

import networkx as nx
import pytest

from intervalnest.cliques import is_consecutive, maximal_cliques
from intervalnest.errors import CapExceededError, NotChordalError, NotIntervalError
from intervalnest.graph import Graph, intersection_graph, parse_graph, prune_twins
from intervalnest.mpqtree import (LEAF, PNODE, QNODE, build_mpq_tree,
                                  check_mpq_invariants, count_orderings,
                                  dump_tree, enumerate_orderings,
                                  forced_nesting_dag, frontier, q_spans,
                                  section_bounds)
from intervalnest.oracle import ordering_nesting

from helpers import q_figure_graph

CLAW = "4 3\n0 1\n0 2\n0 3"
P4 = "4 3\n0 1\n1 2\n2 3"


def test_claw_tree_shape():
    g = parse_graph(CLAW)
    t = build_mpq_tree(g)
    root = t.node(t.root)
    assert root.kind == PNODE and root.section == [0]
    kids = [t.node(c) for c in root.children]
    assert all(k.kind == LEAF for k in kids)
    assert sorted(tuple(k.section) for k in kids) == [(1,), (2,), (3,)]


def test_p4_tree_shape():
    g = parse_graph(P4)
    t = build_mpq_tree(g)
    root = t.node(t.root)
    assert root.kind == QNODE and len(root.children) == 3
    secs = [tuple(s) for s in root.sections]
    # spanning vertices 1 and 2 populate the sections; end vertices live in leaves
    assert secs in ([(1,), (1, 2), (2,)], [(2,), (1, 2), (1,)])
    leaf_secs = sorted(tuple(t.node(c).section) for c in root.children)
    assert leaf_secs == [(), (0,), (3,)]


def test_single_vertex_tree():
    t = build_mpq_tree(parse_graph("1 0"))
    root = t.node(t.root)
    assert root.kind == LEAF and root.section == [0]


def test_frontier_is_consecutive():
    for text in (CLAW, P4):
        g = parse_graph(text)
        t = build_mpq_tree(g)
        assert is_consecutive(t.clique_list.index, frontier(t))


def test_ordering_counts():
    assert sum(1 for _ in enumerate_orderings(build_mpq_tree(parse_graph(CLAW)))) == 6
    assert sum(1 for _ in enumerate_orderings(build_mpq_tree(parse_graph(P4)))) == 2
    assert sum(1 for _ in enumerate_orderings(build_mpq_tree(parse_graph("1 0")))) == 1


def test_cap_exceeded():
    t = build_mpq_tree(parse_graph(CLAW))
    with pytest.raises(CapExceededError):
        list(enumerate_orderings(t, cap=5))
    assert len(list(enumerate_orderings(t, cap=6))) == 6


def test_orderings_match_bruteforce_consecutivity(corpus8):
    """The tree's orderings are exactly the consecutivity-passing permutations."""
    checked = 0
    for g in corpus8:
        gp = prune_twins(g).pruned
        cl = maximal_cliques(gp)
        k = len(cl.cliques)
        if k > 6:
            continue
        t = build_mpq_tree(gp, cl)
        got = {tuple(o) for o in enumerate_orderings(t)}
        want = {p for p in permutations(range(k))
                if is_consecutive(cl.index, list(p))}
        assert got == want
        assert count_orderings(t) == len(got)
        checked += 1
    assert checked > 1000


def test_invariants_hold_on_corpus(corpus8):
    for g in corpus8:
        gp = prune_twins(g).pruned
        t = build_mpq_tree(gp)
        check_mpq_invariants(t, gp)


def test_chordal_non_interval_rejected():
    # a tree that is not a caterpillar: three legs of length two
    g = Graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    with pytest.raises(NotIntervalError):
        build_mpq_tree(g)
    with pytest.raises(NotChordalError):
        build_mpq_tree(parse_graph("4 4\n0 1\n1 2\n2 3\n3 0"))


def test_interval_recognition_matches_bruteforce_on_atlas():
    """Recognition vs consecutivity brute force over every graph with <= 7
    vertices, and corpus counts against the atlas."""
    seen = {n: 0 for n in range(1, 8)}
    for nxg in nx.graph_atlas_g()[1:]:
        n = nxg.number_of_nodes()
        if n < 1 or not nx.is_connected(nxg):
            continue
        g = Graph(n, list(nxg.edges()))
        if nx.is_chordal(nxg):
            cliques = [tuple(sorted(c)) for c in nx.find_cliques(nxg)]
            index = {v: [i for i, c in enumerate(cliques) if v in c]
                     for v in range(n)}
            brute_interval = any(
                is_consecutive(index, list(p))
                for p in permutations(range(len(cliques))))
        else:
            brute_interval = False
        try:
            build_mpq_tree(prune_twins(g).pruned)
            ours = True
        except NotIntervalError:
            ours = False
        assert ours == brute_interval, nxg.edges()
        if ours:
            seen[n] += 1
    # the atlas lists one graph per isomorphism class, so these are exactly
    # the connected-interval-graph counts, independently confirming the corpus
    assert [seen[n] for n in range(1, 8)] == [1, 1, 2, 5, 15, 56, 250]


def test_section_bounds_p4():
    g = parse_graph(P4)
    t = build_mpq_tree(g)
    qid = t.root
    b = section_bounds(t, qid, 1)
    c = section_bounds(t, qid, 2)
    assert {b, c} == {(1, 2), (2, 3)}
    a = section_bounds(t, qid, 0)
    assert a in ((1, 1), (3, 3))


def test_section_bounds_outside_subtree():
    g, spans, x = q_figure_graph()
    gp = prune_twins(g)
    t = build_mpq_tree(gp.pruned)
    qid = t.root
    claw_center = gp.pruned_id_of[gp.class_of[14]]
    lo, hi = section_bounds(t, qid, claw_center)
    assert lo == hi  # inside one child subtree
    # a Q-node that is not above the vertex gives the full span: build one
    # from the figure's inner path-like structure instead
    for nid, nd in enumerate(t.nodes):
        if nd.kind == QNODE and nid != qid:
            pytest.skip("figure tree has a single Q-node")
    # full-span case: vertex of another component via disjoint union
    g2 = Graph(g.n + 1, list(g.edges()))
    t2 = build_mpq_tree(prune_twins(g2).pruned)
    for nid, nd in enumerate(t2.nodes):
        if nd.kind == QNODE:
            iso = prune_twins(g2).pruned.n - 1
            assert section_bounds(t2, nid, iso) == (1, len(nd.children))
            break


def test_forced_nesting_dag_p4_empty():
    g = parse_graph(P4)
    t = build_mpq_tree(g)
    dag = forced_nesting_dag(t, t.root)
    assert dag.edges == []


def test_forced_nesting_dag_single_edge():
    # rigid chain l-u-x-w-r under a universal vertex y: only x's span is
    # strictly inside y's on both sides
    l, x, r, y, u, w = range(6)
    g = Graph(6, [(y, l), (y, x), (y, r), (y, u), (y, w),
                  (u, l), (u, x), (w, x), (w, r)])
    t = build_mpq_tree(prune_twins(g).pruned)
    qid = next(nid for nid, nd in enumerate(t.nodes) if nd.kind == QNODE)
    dag = forced_nesting_dag(t, qid)
    assert dag.edges == [(x, y)]


def test_forced_nesting_dag_of_figure():
    g, spans, x = q_figure_graph()
    t = build_mpq_tree(prune_twins(g).pruned)
    dag = forced_nesting_dag(t, t.root)
    # strict two-sided span containments among the section vertices
    want = set()
    for a, sa in spans.items():
        for b, sb in spans.items():
            if sb[0] < sa[0] and sa[1] < sb[1]:
                want.add((x[a], x[b]))
    assert set(dag.edges) == want
    assert (x["x5"], x["x4"]) in want and (x["x4"], x["x2"]) in want


def test_forced_nesting_matches_every_cleaned_ordering(corpus8):
    """Edge (u, v) iff u's interval is nested in v's in the cleaned
    representation of every consecutive ordering (graphs with <= 6 cliques)."""
    rng = random.Random(99)
    sample = [g for g in corpus8 if g.n <= 7]
    sample = rng.sample(sample, 120)
    for g in sample:
        gp = prune_twins(g).pruned
        cl = maximal_cliques(gp)
        if len(cl.cliques) > 6:
            continue
        t = build_mpq_tree(gp, cl)
        dag = forced_nesting_dag(t, "tree")
        always_nested = None
        for ordering in enumerate_orderings(t):
            pos = {c: i for i, c in enumerate(ordering)}
            nested = set()
            for u in range(gp.n):
                pu = [pos[c] for c in cl.index[u]]
                for v in range(gp.n):
                    if u == v:
                        continue
                    pv = [pos[c] for c in cl.index[v]]
                    if min(pv) < min(pu) and max(pu) < max(pv):
                        nested.add((u, v))
            always_nested = nested if always_nested is None else always_nested & nested
        assert set(dag.edges) == always_nested


def test_dump_format():
    text = dump_tree(build_mpq_tree(parse_graph(CLAW)))
    lines = text.splitlines()
    assert lines[0] == "P {0}"
    assert all(l.startswith("  L #") for l in lines[1:])
    qtext = dump_tree(build_mpq_tree(parse_graph(P4)))
    assert qtext.splitlines()[0].startswith("Q [")
