"""Interval representations: cleaned construction, nesting statistics, flips,
proper-layer partitions, verification, and the compact endpoint bit code.

Coordinates are exact rationals.  The cleaned construction places clique i at
integer position i (1-based) and breaks endpoint ties with fractions of
denominator 2(n+1), so containment tests are exact.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from fractions import Fraction

from .cliques import CliqueList, is_consecutive, maximal_cliques
from .errors import MalformedCodeError, OrderingNotConsecutiveError
from .graph import Graph, intersection_graph


@dataclass
class IntervalRepresentation:
    """Closed intervals per vertex, plus optional clique-ordering provenance."""

    intervals: dict
    ordering_used: list | None = None

    def __len__(self):
        return len(self.intervals)


@dataclass
class NestingStats:
    per_vertex: dict
    total: int
    right: int   # deepest chain avoiding the leftmost maximal clique
    left: int    # deepest chain avoiding the rightmost maximal clique


@dataclass
class LayerLabeling:
    label: dict  # vertex -> 1..k


@dataclass
class BitCode:
    n: int
    k: int
    payload: bytes
    bit_length: int


class _MaxFenwick:
    """Prefix-maximum Fenwick tree over 1..size (values start at 0)."""

    def __init__(self, size):
        self.size = size
        self.data = [0] * (size + 1)

    def update(self, i, value):
        while i <= self.size:
            if self.data[i] < value:
                self.data[i] = value
            i += i & (-i)

    def query(self, i):
        best = 0
        while i > 0:
            if self.data[i] > best:
                best = self.data[i]
            i -= i & (-i)
        return best


def cleaned_representation(g: Graph, ordering: list,
                           cliques: CliqueList | None = None) -> IntervalRepresentation:
    """Representation realizing only the nestings forced by ``ordering``.

    Among intervals sharing a left-end clique, left endpoints are ordered like
    the right-end cliques (and symmetrically at right ends), so an interval is
    nested in another iff its clique range is strictly inside on both sides.
    Expects twin-pruned input; twins would collide on both tie-breaks.
    """
    if cliques is None:
        cliques = maximal_cliques(g)
    if sorted(ordering) != list(range(len(cliques.cliques))):
        raise OrderingNotConsecutiveError("ordering must permute all clique indices")
    if not is_consecutive(cliques.index, ordering):
        raise OrderingNotConsecutiveError("vertex cliques are not consecutive")
    pos = {ci: i + 1 for i, ci in enumerate(ordering)}  # clique -> 1-based slot
    left_clique = {}
    right_clique = {}
    for v in range(g.n):
        ps = [pos[c] for c in cliques.index[v]]
        left_clique[v] = min(ps)
        right_clique[v] = max(ps)
    den = 2 * (g.n + 1)
    starters: dict = {}
    enders: dict = {}
    for v in range(g.n):
        starters.setdefault(left_clique[v], []).append(v)
        enders.setdefault(right_clique[v], []).append(v)
    intervals = {}
    lefts = {}
    for c, group in starters.items():
        group.sort(key=lambda v: (right_clique[v], v))
        size = len(group)
        for rank, v in enumerate(group):  # smallest right end sticks out furthest left
            lefts[v] = Fraction(c * den - (size - rank), den)
    for c, group in enders.items():
        group.sort(key=lambda v: (left_clique[v], v))
        for rank, v in enumerate(group, start=1):
            intervals[v] = (lefts[v], Fraction(c * den + rank, den))
    return IntervalRepresentation(intervals=intervals, ordering_used=list(ordering))


def nesting_depths(intervals: dict) -> dict:
    """Longest chain of strictly nested intervals ending at each vertex, i.e.
    the vertex's interval is the outermost of its chain.

    Nesting is proper set containment; identical intervals do not nest.
    """
    items = sorted(intervals.items(), key=lambda kv: (-kv[1][0], kv[1][1], kv[0]))
    rs = sorted({r for _, (_, r) in items})
    rank = {r: i + 1 for i, r in enumerate(rs)}
    fen = _MaxFenwick(len(rs))
    depth = {}
    i = 0
    while i < len(items):
        j = i
        batch = []
        while j < len(items) and items[j][1] == items[i][1]:
            batch.append(items[j])
            j += 1
        for v, (l, r) in batch:
            # already-inserted intervals with r' <= r have l' >= l (not both
            # equal), so they are exactly the properly contained ones
            depth[v] = fen.query(rank[r]) + 1
        for v, (l, r) in batch:
            fen.update(rank[r], depth[v])
        i = j
    return depth


def _boundary_cliques(r: IntervalRepresentation):
    """Vertex sets of the leftmost and rightmost maximal cliques of r."""
    if not r.intervals:
        return set(), set()
    min_right = min(iv[1] for iv in r.intervals.values())
    max_left = max(iv[0] for iv in r.intervals.values())
    leftmost = {v for v, (l, rr) in r.intervals.items() if l <= min_right <= rr}
    rightmost = {v for v, (l, rr) in r.intervals.items() if l <= max_left <= rr}
    return leftmost, rightmost


def nesting_stats(r: IntervalRepresentation) -> NestingStats:
    depth = nesting_depths(r.intervals)
    total = max(depth.values(), default=0)
    leftmost, rightmost = _boundary_cliques(r)
    right = max((d for v, d in depth.items() if v not in leftmost), default=0)
    left = max((d for v, d in depth.items() if v not in rightmost), default=0)
    return NestingStats(per_vertex=depth, total=total, right=right, left=left)


def flip(r: IntervalRepresentation) -> IntervalRepresentation:
    """Mirror the representation, translated back onto positive coordinates."""
    if not r.intervals:
        return IntervalRepresentation(intervals={}, ordering_used=None)
    lo = min(iv[0] for iv in r.intervals.values())
    hi = max(iv[1] for iv in r.intervals.values())
    shift = lo + hi
    flipped = {v: (shift - b, shift - a) for v, (a, b) in r.intervals.items()}
    ordering = list(reversed(r.ordering_used)) if r.ordering_used else None
    return IntervalRepresentation(intervals=flipped, ordering_used=ordering)


def verify(r: IntervalRepresentation, g: Graph) -> bool:
    """True iff the intersection graph of r is exactly g (same vertex ids)."""
    if set(r.intervals) != set(range(g.n)):
        return False
    if any(l > rr for l, rr in r.intervals.values()):
        return False
    ordered = [r.intervals[v] for v in range(g.n)]
    return intersection_graph(ordered).edge_set() == g.edge_set()


def proper_layers(r: IntervalRepresentation) -> LayerLabeling:
    """Label every vertex with its nesting depth; each label class is proper."""
    return LayerLabeling(label=nesting_depths(r.intervals))


def layers_are_proper(r: IntervalRepresentation, labeling: LayerLabeling) -> bool:
    by_label: dict = {}
    for v, lab in labeling.label.items():
        by_label.setdefault(lab, []).append(v)
    for vs in by_label.values():
        for i, u in enumerate(vs):
            lu = r.intervals[u]
            for w in vs[i + 1:]:
                lw = r.intervals[w]
                if lu != lw and (
                    (lw[0] <= lu[0] and lu[1] <= lw[1])
                    or (lu[0] <= lw[0] and lw[1] <= lu[1])
                ):
                    return False
    return True


def _endpoint_sequence(r: IntervalRepresentation):
    """Endpoints left to right with deterministic tie-breaking.

    At equal coordinates: left endpoints precede right endpoints; among left
    endpoints, descending partner coordinate; among right endpoints likewise.
    """
    events = []
    for v, (l, rr) in r.intervals.items():
        events.append((l, 0, -rr, v))
        events.append((rr, 1, -l, v))
    events.sort()
    return events


def label_bits(k: int) -> int:
    if k <= 1:
        return 0
    return (k - 1).bit_length()


class _BitWriter:
    def __init__(self):
        self.buf = bytearray()
        self.acc = 0
        self.nbits = 0

    def write(self, value, width):
        for shift in range(width - 1, -1, -1):
            self.acc = (self.acc << 1) | ((value >> shift) & 1)
            self.nbits += 1
            if self.nbits % 8 == 0:
                self.buf.append(self.acc & 0xFF)
                self.acc = 0

    def finish(self):
        pad = (-self.nbits) % 8
        if pad:
            self.buf.append((self.acc << pad) & 0xFF)
        return bytes(self.buf), self.nbits


def encode(r: IntervalRepresentation) -> BitCode:
    """Endpoint stream: per endpoint one side bit (0 left, 1 right) followed by
    ceil(log2 k) bits of (nesting label - 1), k being the representation's
    nesting; total 2n(1 + ceil(log2 k)) payload bits."""
    labels = nesting_depths(r.intervals)
    n = len(r.intervals)
    k = max(labels.values(), default=0)
    lbits = label_bits(k)
    w = _BitWriter()
    for _, side, _, v in _endpoint_sequence(r):
        w.write(side, 1)
        if lbits:
            w.write(labels[v] - 1, lbits)
    payload, nbits = w.finish()
    return BitCode(n=n, k=k, payload=payload, bit_length=nbits)


class _BitReader:
    def __init__(self, payload, bit_length):
        self.payload = payload
        self.bit_length = bit_length
        self.pos = 0

    def read(self, width):
        if self.pos + width > self.bit_length:
            raise MalformedCodeError("truncated payload")
        value = 0
        for _ in range(width):
            byte = self.payload[self.pos // 8]
            bit = (byte >> (7 - self.pos % 8)) & 1
            value = (value << 1) | bit
            self.pos += 1
        return value


def decode(code: BitCode) -> tuple:
    """Rebuild (graph, representation) from a bit code.

    Within one label no two intervals nest, so endpoint records of the same
    label pair up first-in-first-out.  Endpoint coordinates come out as the
    integers 0..2n-1.
    """
    n, k = code.n, code.k
    lbits = label_bits(k)
    expected = 2 * n * (1 + lbits)
    if code.bit_length != expected:
        raise MalformedCodeError(
            f"payload has {code.bit_length} bits, expected {expected}")
    reader = _BitReader(code.payload, code.bit_length)
    open_by_label: dict = {lab: [] for lab in range(1, max(k, 1) + 1)}
    intervals = {}
    next_vertex = 0
    opens = 0
    for step in range(2 * n):
        side = reader.read(1)
        lab = (reader.read(lbits) + 1) if lbits else 1
        if lab > max(k, 1):
            raise MalformedCodeError(f"label {lab} exceeds nesting {k}")
        coord = Fraction(step)
        if side == 0:
            open_by_label[lab].append((next_vertex, coord))
            next_vertex += 1
            opens += 1
        else:
            if not open_by_label[lab]:
                raise MalformedCodeError("right endpoint with no open interval")
            v, start = open_by_label[lab].pop(0)
            intervals[v] = (start, coord)
    if any(open_by_label.values()):
        raise MalformedCodeError("unclosed intervals at end of code")
    if opens != n:
        raise MalformedCodeError("left-endpoint count does not match n")
    rep = IntervalRepresentation(intervals=intervals)
    ordered = [intervals[v] for v in range(n)]
    return intersection_graph(ordered), rep


def write_code(code: BitCode) -> bytes:
    """8-byte header (n, k as 32-bit big-endian) + MSB-first payload."""
    return struct.pack(">II", code.n, code.k) + code.payload


def read_code(data: bytes) -> BitCode:
    if len(data) < 8:
        raise MalformedCodeError("file shorter than header")
    n, k = struct.unpack(">II", data[:8])
    bit_length = 2 * n * (1 + label_bits(k))
    need = (bit_length + 7) // 8
    payload = data[8:]
    if len(payload) != need:
        raise MalformedCodeError(f"payload is {len(payload)} bytes, expected {need}")
    return BitCode(n=n, k=k, payload=payload, bit_length=bit_length)


def dump_representation(r: IntervalRepresentation) -> str:
    """One line per vertex: "v l r" with rationals printed as p/q."""
    lines = []
    for v in sorted(r.intervals):
        l, rr = r.intervals[v]
        lines.append(f"{v} {l.numerator}/{l.denominator} {rr.numerator}/{rr.denominator}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_representation(text: str) -> IntervalRepresentation:
    intervals = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        v_s, l_s, r_s = line.split()
        intervals[int(v_s)] = (Fraction(l_s), Fraction(r_s))
    return IntervalRepresentation(intervals=intervals)
