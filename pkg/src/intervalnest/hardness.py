"""Generator and desk-scale validator for the two-length extension gadget.

A 3-Partition instance (3s integers summing to M*s) maps to an interval graph
with s+1 pre-drawn unit intervals pinning a long universal interval w, plus one
even path per integer.  The pre-drawn intervals carve s gaps of width M+1, and
a path carrying integer A needs width just over A, so an extension with two
interval lengths exists iff the integers split into s triples of sum M.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .graph import Graph
from .representation import IntervalRepresentation, verify


@dataclass
class ThreePartitionInstance:
    s: int
    M: int
    A: list

    def __post_init__(self):
        if len(self.A) != 3 * self.s:
            raise ValueError(f"need exactly {3 * self.s} integers, got {len(self.A)}")
        if any(a <= 0 for a in self.A):
            raise ValueError("integers must be positive")
        if sum(self.A) != self.M * self.s:
            raise ValueError(f"integers sum to {sum(self.A)}, need {self.M * self.s}")

    def in_size_window(self) -> bool:
        """M/4 < A_i < M/2 for all i, the window forcing exactly-3 groups."""
        return all(4 * a > self.M and 2 * a < self.M for a in self.A)


@dataclass
class PartialRepresentation:
    predrawn: dict   # vertex -> (l, r)
    hosts: Graph     # subgraph induced by the pre-drawn vertices


@dataclass
class HardnessInstance:
    graph: Graph
    partial: PartialRepresentation
    lengths: tuple               # (a, b) = (1, s*(M+2) - 1)
    role_of: dict                # vertex -> ('anchor', i) | ('cover',) | ('path', i, j)
    instance: ThreePartitionInstance
    extended: bool = False


class Unsolvable:
    """Marker result: the instance admits no extension."""

    def __repr__(self):
        return "Unsolvable()"

    def __eq__(self, other):
        return isinstance(other, Unsolvable)


def reduce_3partition(inst: ThreePartitionInstance, extended: bool = False) -> HardnessInstance:
    """Build the extension instance for a 3-Partition input.

    Vertices: anchors v_0..v_s pre-drawn at [i(M+2), i(M+2)+1]; a cover vertex
    w adjacent to everything; one path with 2*A_i vertices per integer.  With
    ``extended``, two extra guards adjacent only to the outer anchors force
    the cover's length without prescribing it.
    """
    s, M, A = inst.s, inst.M, inst.A
    if not inst.in_size_window():
        warnings.warn("integers outside the window M/4 < A_i < M/2; "
                      "groups of size other than 3 could tie", stacklevel=2)
    if s == 1:
        warnings.warn("s = 1 instance is decided by the sum alone", stacklevel=2)
    role_of = {}
    anchors = []
    vid = 0
    for i in range(s + 1):
        role_of[vid] = ("anchor", i)
        anchors.append(vid)
        vid += 1
    w = vid
    role_of[w] = ("cover",)
    vid += 1
    edges = []
    path_vertices = []
    for i, a in enumerate(A):
        path = []
        for j in range(2 * a):
            role_of[vid] = ("path", i, j)
            path.append(vid)
            vid += 1
        edges.extend(zip(path, path[1:]))
        path_vertices.append(path)
    guards = []
    if extended:
        for anchor in (anchors[0], anchors[-1]):
            role_of[vid] = ("guard", anchor)
            guards.append((vid, anchor))
            vid += 1
    n = vid
    for v in range(n):
        if v != w and role_of[v][0] != "guard":
            edges.append((v, w))
    for guard, anchor in guards:
        edges.append((guard, anchor))
    graph = Graph(n, edges)
    predrawn = {anchors[i]: (Fraction(i * (M + 2)), Fraction(i * (M + 2) + 1))
                for i in range(s + 1)}
    hosts = Graph(s + 1, [])  # anchors are pairwise disjoint
    b = s * (M + 2) - 1
    return HardnessInstance(
        graph=graph,
        partial=PartialRepresentation(predrawn=predrawn, hosts=hosts),
        lengths=(1, b),
        role_of=role_of,
        instance=inst,
        extended=extended,
    )


def partition_into_triples(inst: ThreePartitionInstance):
    """One split of the indices into s triples each summing to M, or None.

    Exhaustive; the independent decider for the desk-scale checks.
    """
    def rec(remaining):
        if not remaining:
            return []
        first = remaining[0]
        rest = remaining[1:]
        for pair in combinations(rest, 2):
            trio = (first,) + pair
            if sum(inst.A[i] for i in trio) == inst.M:
                sub = rec([i for i in rest if i not in pair])
                if sub is not None:
                    return [trio] + sub
        return None

    return rec(list(range(3 * inst.s)))


def _pack_path(length_a: int, start: Fraction, step: Fraction, shift: Fraction):
    """Unit intervals of an even path packed into span A + slack.

    Pairs of coincident-ish intervals one unit apart: consecutive vertices
    overlap, vertices two apart stay clear.
    """
    out = []
    for pair in range(length_a):
        base = start + pair * (1 + step)
        out.append((base, base + 1))
        out.append((base + shift, base + shift + 1))
    return out


def solve_small(inst: HardnessInstance):
    """Brute-force an extending two-length representation, or Unsolvable.

    Desk-scale only: s <= 4 and M <= 12.
    """
    tp = inst.instance
    if tp.s > 4 or tp.M > 12:
        raise ValueError("instance outside the brute-force window (s <= 4, M <= 12)")
    grouping = partition_into_triples(tp)
    if grouping is None:
        return Unsolvable()
    s, M = tp.s, tp.M
    intervals = dict(inst.partial.predrawn)
    w = next(v for v, r in inst.role_of.items() if r[0] == "cover")
    intervals[w] = (Fraction(1), Fraction(s * (M + 2)))
    paths: dict = {}
    for v, role in inst.role_of.items():
        if role[0] == "path":
            paths.setdefault(role[1], []).append((role[2], v))
    margin = Fraction(1, 8)
    step = Fraction(1, 8 * (M + 2))
    shift = step
    for gap_index, trio in enumerate(grouping):
        cursor = Fraction(gap_index * (M + 2) + 1) + margin
        for item in trio:
            a = tp.A[item]
            placed = _pack_path(a, cursor, step, shift)
            for (j, v), iv in zip(sorted(paths[item]), placed):
                intervals[v] = iv
            cursor = placed[-1][1] + margin
    for guard, anchor in ((v, r[1]) for v, r in inst.role_of.items() if r[0] == "guard"):
        al, ar = intervals[anchor]
        if inst.role_of[anchor] == ("anchor", 0):
            intervals[guard] = (al - 1, al)  # touch the outer anchor from outside
        else:
            intervals[guard] = (ar, ar + 1)
    rep = IntervalRepresentation(intervals=intervals)
    return rep


def verify_extension(inst: HardnessInstance, rep) -> bool:
    """True iff rep realizes the graph, honors every pre-drawn interval, and
    uses at most two distinct lengths."""
    if isinstance(rep, Unsolvable):
        return False
    if not verify(rep, inst.graph):
        return False
    for v, iv in inst.partial.predrawn.items():
        if rep.intervals[v] != iv:
            return False
    lengths = {r - l for l, r in rep.intervals.values()}
    return len(lengths) <= 2


def format_predrawn(inst: HardnessInstance) -> str:
    """Sidecar file: lines "v l r len" for the pre-drawn intervals."""
    lines = []
    a = inst.lengths[0]
    for v in sorted(inst.partial.predrawn):
        l, r = inst.partial.predrawn[v]
        lines.append(f"{v} {l.numerator}/{l.denominator} {r.numerator}/{r.denominator} {a}")
    return "\n".join(lines) + "\n"
