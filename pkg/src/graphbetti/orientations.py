"""Orientations of simple quotient graphs and their divisor images.

An orientation is a frozenset of directed (tail, head) label pairs, one per
simple edge of the quotient.  The map to divisors follows the crossing-degree
rule: each vertex of a head block collects its crossing degree over the
oriented quotient edges pointing into that block.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .divisors import Divisor, class_key, canonical_sink, zero_divisor
from .multigraph import Multigraph, crossing_degree
from .partitions import ConnectedPartition, QuotientGraph, quotient

Orientation = frozenset

SWITCH_BFS_EDGE_CAP = 12


class OrientationError(ValueError):
    pass


class LemmaViolation(AssertionError):
    """Raised when two provably-equal checks disagree (falsification hook)."""


def _is_acyclic(vertices, edges) -> bool:
    indeg = {v: 0 for v in vertices}
    out = {v: [] for v in vertices}
    for tail, head in edges:
        indeg[head] += 1
        out[tail].append(head)
    queue = [v for v in vertices if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(vertices)


def is_acyclic(q: QuotientGraph, o: Orientation) -> bool:
    return _is_acyclic(q.simple.vertices, o)


def sources(q: QuotientGraph, o: Orientation) -> frozenset:
    heads = {head for _, head in o}
    return frozenset(v for v in q.simple.vertices if v not in heads)


@lru_cache(maxsize=None)
def enumerate_acyclic_orientations(q: QuotientGraph) -> frozenset:
    """All acyclic orientations of the simple quotient."""
    pairs = [tuple(p) for p in q.simple.simple_pairs()]
    vertices = q.simple.vertices
    found = []
    for choice in product((0, 1), repeat=len(pairs)):
        edges = [(u, v) if bit == 0 else (v, u)
                 for (u, v), bit in zip(pairs, choice)]
        if _is_acyclic(vertices, edges):
            found.append(frozenset(edges))
    return frozenset(found)


def enumerate_AUS(q: QuotientGraph, s: str) -> frozenset:
    """Acyclic orientations whose unique source is the block labelled s."""
    if s not in q.simple.vertices:
        raise OrientationError("unknown block label %r" % s)
    return frozenset(o for o in enumerate_acyclic_orientations(q)
                     if sources(q, o) == frozenset((s,)))


def f_map(g: Multigraph, part: ConnectedPartition, o: Orientation) -> Divisor:
    """Divisor on G: each vertex sums crossing degrees over oriented quotient
    edges whose head block contains it."""
    q = quotient(g, part)
    chips = list(zero_divisor(g))
    for tail, head in o:
        tail_block = q.block_by_label[tail]
        head_block = q.block_by_label[head]
        for v in head_block:
            chips[g.index(v)] += crossing_degree(g, tail_block, head_block, v)
    return tuple(chips)


def boundary_divisor(g: Multigraph, sequence, choices) -> Divisor:
    """Boundary divisor of a generating sequence with per-cut side choices.

    sequence is a tuple of cuts (A_i, B_i); choices[i] must be one of the
    two sides of cut i.  Each vertex of the chosen side collects its
    crossing degree for that cut.
    """
    chips = list(zero_divisor(g))
    for (A, B), X in zip(sequence, choices):
        if X != A and X != B:
            raise ValueError("choice must be one of the cut sides")
        for v in X:
            chips[g.index(v)] += crossing_degree(g, A, B, v)
    return tuple(chips)


def orientation_from_choices(g: Multigraph, part: ConnectedPartition,
                             sequence, choices) -> Orientation:
    """The orientation whose f-image equals the boundary divisor of the
    given generating sequence and side choices: each quotient edge points
    toward the component contained in the chosen side of the cut severing it."""
    q = quotient(g, part)
    edges = set()
    for pair in q.simple.simple_pairs():
        lu, lv = tuple(pair)
        bu, bv = q.block_by_label[lu], q.block_by_label[lv]
        for (A, B), X in zip(sequence, choices):
            severed = (bu <= A and bv <= B) or (bu <= B and bv <= A)
            if severed:
                if bu <= X:
                    edges.add((lv, lu))
                else:
                    edges.add((lu, lv))
                break
        else:
            raise ValueError("sequence does not sever quotient edge %s-%s"
                             % (lu, lv))
    return frozenset(edges)


def canonical_source_block(g: Multigraph, part: ConnectedPartition) -> str:
    """The block containing the globally least vertex; partitions order
    blocks by least vertex, so this is the first block's label."""
    q = quotient(g, part)
    return q.labels()[0]


@lru_cache(maxsize=None)
def boundary_divisor_classes(g: Multigraph, part: ConnectedPartition) -> frozenset:
    """Class keys of the partition's boundary divisors, via the unique-source
    orientation bijection."""
    if len(part) < 2:
        raise ValueError("partition needs at least 2 blocks")
    q = quotient(g, part)
    s = canonical_source_block(g, part)
    return frozenset(class_key(g, f_map(g, part, o))
                     for o in enumerate_AUS(q, s))


def frontier_edges(q: QuotientGraph, o: Orientation, A) -> list:
    A = frozenset(A)
    return [(tail, head) for tail, head in o
            if (tail in A) != (head in A)]


def is_critical(q: QuotientGraph, o: Orientation, A) -> bool:
    """All frontier edges of A point away from A, or all point toward it."""
    A = frozenset(A)
    frontier = frontier_edges(q, o, A)
    if not frontier:
        return True
    away = [tail in A for tail, _ in frontier]
    return all(away) or not any(away)


def switch(q: QuotientGraph, o: Orientation, A) -> Orientation:
    """Flip the frontier edges of a critical set A."""
    A = frozenset(A)
    if not is_critical(q, o, A):
        raise OrientationError("set %s is not critical" % sorted(A))
    flipped = set(o)
    for edge in frontier_edges(q, o, A):
        flipped.remove(edge)
        flipped.add((edge[1], edge[0]))
    return frozenset(flipped)


def _switch_class_bfs(q: QuotientGraph, o: Orientation) -> frozenset:
    """All orientations reachable from o through switches."""
    labels = q.simple.vertices
    subsets = []
    for mask in range(1, 2 ** len(labels) - 1):
        subsets.append(frozenset(l for k, l in enumerate(labels)
                                 if mask >> k & 1))
    seen = {o}
    stack = [o]
    while stack:
        cur = stack.pop()
        for A in subsets:
            if is_critical(q, cur, A):
                nxt = switch(q, cur, A)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return frozenset(seen)


def orientations_equivalent(g: Multigraph, part: ConnectedPartition,
                            o1: Orientation, o2: Orientation) -> bool:
    """Switch-equivalence of two acyclic orientations.

    Decided by comparing the divisor classes of their f-images; on small
    quotients the switch BFS is run as well and must agree.
    """
    q = quotient(g, part)
    if not (is_acyclic(q, o1) and is_acyclic(q, o2)):
        raise OrientationError("orientations must be acyclic")
    by_divisor = class_key(g, f_map(g, part, o1)) == class_key(g, f_map(g, part, o2))
    if len(q.simple.simple_pairs()) <= SWITCH_BFS_EDGE_CAP:
        by_bfs = o2 in _switch_class_bfs(q, o1)
        if by_bfs != by_divisor:
            raise LemmaViolation(
                "switch BFS and divisor-class equivalence disagree")
    return by_divisor


def reachable_from(q: QuotientGraph, o: Orientation, s: str) -> frozenset:
    """Blocks reachable from s along directed edges (including s)."""
    out = {v: [] for v in q.simple.vertices}
    for tail, head in o:
        out[tail].append(head)
    seen = {s}
    stack = [s]
    while stack:
        for w in out[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def orientation_to_string(o: Orientation) -> str:
    return ",".join("%s->%s" % (tail, head)
                    for tail, head in sorted(o))
