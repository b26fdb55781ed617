"""Connected partitions, cuts, quotient graphs and generating sequences."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .multigraph import Multigraph, crossing_degree


@dataclass(frozen=True)
class ConnectedPartition:
    """Disjoint connected vertex blocks covering V, in canonical order.

    Blocks are ordered by their least vertex (graph vertex order), so
    partitions compare by value.
    """
    blocks: tuple

    def __len__(self):
        return len(self.blocks)


def is_connected_subset(g: Multigraph, S) -> bool:
    S = frozenset(S)
    if not S:
        return False
    start = next(iter(S))
    seen = {start}
    stack = [start]
    while stack:
        for w in g.neighbors(stack.pop()):
            if w in S and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == S


def make_partition(g: Multigraph, blocks) -> ConnectedPartition:
    """Validate and canonicalize a collection of blocks."""
    blocks = [frozenset(b) for b in blocks]
    flat = [v for b in blocks for v in b]
    if len(flat) != len(set(flat)) or set(flat) != set(g.vertices):
        raise ValueError("blocks must partition the vertex set")
    for b in blocks:
        if not is_connected_subset(g, b):
            raise ValueError("block %s is not connected" % sorted(b))
    blocks.sort(key=lambda b: min(g.index(v) for v in b))
    return ConnectedPartition(tuple(blocks))


def block_label(g: Multigraph, block) -> str:
    return "{%s}" % ",".join(sorted(block, key=g.index))


def partition_to_string(g: Multigraph, part: ConnectedPartition) -> str:
    return "|".join(block_label(g, b) for b in part.blocks)


def parse_partition(g: Multigraph, text: str) -> ConnectedPartition:
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if chunk.startswith("{") and chunk.endswith("}"):
            chunk = chunk[1:-1]
        names = [v.strip() for v in chunk.split(",") if v.strip()]
        for v in names:
            if not g.has_vertex(v):
                raise ValueError("unknown vertex %r in partition" % v)
        blocks.append(frozenset(names))
    return make_partition(g, blocks)


@lru_cache(maxsize=None)
def enumerate_connected_partitions(g: Multigraph, parts: int) -> frozenset:
    """All partitions of V into exactly `parts` connected blocks."""
    n = len(g)
    if not 1 <= parts <= n:
        raise ValueError("parts must be between 1 and %d" % n)
    vertices = g.vertices
    found = []

    def assign(i, blocks):
        if n - i < parts - len(blocks):
            return
        if i == n:
            if len(blocks) == parts and all(
                    is_connected_subset(g, b) for b in blocks):
                found.append(make_partition(g, blocks))
            return
        v = vertices[i]
        for b in blocks:
            b.add(v)
            assign(i + 1, blocks)
            b.remove(v)
        if len(blocks) < parts:
            blocks.append({v})
            assign(i + 1, blocks)
            blocks.pop()

    assign(0, [])
    return frozenset(found)


@dataclass(frozen=True)
class QuotientGraph:
    """Blocks as vertices: G_pi keeps multiplicities, the simple version
    collapses them to 1."""
    partition: ConnectedPartition
    multi: Multigraph
    simple: Multigraph
    block_by_label: dict

    def __hash__(self):
        return hash((self.partition, self.multi))

    def labels(self):
        return self.multi.vertices


@lru_cache(maxsize=None)
def quotient(g: Multigraph, part: ConnectedPartition) -> QuotientGraph:
    """Collapse each block to a vertex, aggregating edge multiplicities."""
    labels = [block_label(g, b) for b in part.blocks]
    by_label = dict(zip(labels, part.blocks))
    of_vertex = {}
    for label, block in by_label.items():
        for v in block:
            of_vertex[v] = label
    mult = {}
    for pair, m in g.mult.items():
        u, v = tuple(pair)
        lu, lv = of_vertex[u], of_vertex[v]
        if lu != lv:
            key = frozenset((lu, lv))
            mult[key] = mult.get(key, 0) + m
    multi = Multigraph(labels, mult)
    simple = Multigraph(labels, {pair: 1 for pair in mult})
    return QuotientGraph(part, multi, simple, by_label)


def _component_cuts(g: Multigraph, comp):
    """Ways to split a component (a frozenset of blocks) into two connected
    halves along block boundaries.  Yields canonical (A, B) vertex sets."""
    blocks = sorted(comp, key=lambda b: min(g.index(v) for v in b))
    first, rest = blocks[0], blocks[1:]
    for mask in range(2 ** len(rest)):
        side = [first] + [b for k, b in enumerate(rest) if mask >> k & 1]
        other = [b for k, b in enumerate(rest) if not mask >> k & 1]
        if not other:
            continue
        A = frozenset().union(*side)
        B = frozenset().union(*other)
        if is_connected_subset(g, A) and is_connected_subset(g, B):
            yield (A, B), (frozenset(side), frozenset(other))


def generating_sequences(g: Multigraph, part: ConnectedPartition) -> frozenset:
    """All ordered cut sequences producing the partition.

    A sequence of k cuts; cut i splits one component left by the earlier
    cuts into two connected halves, and applying all cuts yields exactly the
    partition's blocks.
    """
    if len(part) < 2:
        raise ValueError("partition needs at least 2 blocks")
    memo = {}

    def suffixes(state):
        if state in memo:
            return memo[state]
        live = [comp for comp in state if len(comp) > 1]
        if not live:
            memo[state] = ((),)
            return memo[state]
        out = []
        for comp in state:
            if len(comp) == 1:
                continue
            for cut, (side, other) in _component_cuts(g, comp):
                nxt = frozenset(c for c in state if c != comp) | {side, other}
                for tail in suffixes(nxt):
                    out.append((cut,) + tail)
        memo[state] = tuple(out)
        return memo[state]

    start = frozenset({frozenset(part.blocks)})
    return frozenset(suffixes(start))


def cuts_intersect(part1: ConnectedPartition, part2: ConnectedPartition) -> bool:
    """True iff no labeling nests one cut inside the other."""
    if len(part1) != 2 or len(part2) != 2:
        raise ValueError("cuts_intersect expects 2-block partitions")
    A1, B1 = part1.blocks
    A2, B2 = part2.blocks
    for X1, Y1 in ((A1, B1), (B1, A1)):
        for X2, Y2 in ((A2, B2), (B2, A2)):
            if X1 <= X2 and Y2 <= Y1:
                return False
    return True


def boundary_set(g: Multigraph, part: ConnectedPartition, j: int, I) -> frozenset:
    """Vertices of block j with at least one edge into the blocks of I."""
    I = frozenset(I)
    if j in I:
        raise ValueError("block %d cannot appear in I" % j)
    target = frozenset().union(*(part.blocks[i] for i in I)) if I else frozenset()
    block = part.blocks[j]
    return frozenset(
        v for v in block
        if any(w in target for w in g.neighbors(v)))


def block_boundary(g: Multigraph, part: ConnectedPartition, j: int) -> frozenset:
    """The full boundary B_j of block j."""
    return boundary_set(g, part, j, [i for i in range(len(part)) if i != j])


def partition_boundary(g: Multigraph, part: ConnectedPartition) -> frozenset:
    """V_b: the union of all block boundaries."""
    out = frozenset()
    for j in range(len(part)):
        out |= block_boundary(g, part, j)
    return out
