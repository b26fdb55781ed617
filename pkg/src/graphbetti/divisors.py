"""Divisor and script arithmetic on a multigraph.

Divisors and scripts are both integer tuples indexed by the graph's vertex
order; a divisor counts chips per vertex, a script counts vertex firings.
This module provides Dhar's burning algorithm, sink-reduction, class keys,
linear systems, superstable (G-parking) enumeration and aliveness tests.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import NamedTuple, Optional

from .multigraph import Multigraph

Divisor = tuple
Script = tuple


class DivisorClassKey(NamedTuple):
    """Canonical identifier of a divisor class: sink + reduced representative."""
    sink: str
    reduced: Divisor


def zero_divisor(g: Multigraph) -> Divisor:
    return (0,) * len(g)


def unit_divisor(g: Multigraph, v: str) -> Divisor:
    d = [0] * len(g)
    d[g.index(v)] = 1
    return tuple(d)


def degree(D: Divisor) -> int:
    return sum(D)


def support(g: Multigraph, D: Divisor) -> frozenset:
    return frozenset(v for v in g.vertices if D[g.index(v)] != 0)


def divisor_to_string(g: Multigraph, D: Divisor) -> str:
    """Compact digit string when possible, ``v=count`` list otherwise.

    The digit form lists chips per vertex in alphabetical identifier order
    and applies only to single-character identifiers and entries in 0..9.
    """
    names = sorted(g.vertices)
    values = [D[g.index(v)] for v in names]
    if all(len(v) == 1 for v in names) and all(0 <= x <= 9 for x in values):
        return "".join(str(x) for x in values)
    return ",".join("%s=%d" % (v, x) for v, x in zip(names, values))


def parse_divisor(g: Multigraph, text: str) -> Divisor:
    """Inverse of divisor_to_string; accepts both serialized forms."""
    text = text.strip()
    chips = [0] * len(g)
    if "=" in text:
        for item in text.split(","):
            name, _, value = item.partition("=")
            name = name.strip()
            if not g.has_vertex(name):
                raise ValueError("unknown vertex %r in divisor" % name)
            chips[g.index(name)] = int(value)
        return tuple(chips)
    names = sorted(g.vertices)
    if len(text) != len(names) or not text.isdigit():
        raise ValueError("divisor %r does not match the digit form" % text)
    for name, ch in zip(names, text):
        chips[g.index(name)] = int(ch)
    return tuple(chips)


def apply_script(g: Multigraph, D: Divisor, sigma: Script) -> Divisor:
    """D - L*sigma; the chip state after firing each vertex sigma_v times."""
    out = list(D)
    for v in g.vertices:
        s = sigma[g.index(v)]
        if s == 0:
            continue
        i = g.index(v)
        for w in g.neighbors(v):
            m = g.multiplicity(v, w) * s
            out[i] -= m
            out[g.index(w)] += m
    return tuple(out)


def fire_set(g: Multigraph, D: Divisor, S) -> Divisor:
    """Fire every vertex of S exactly once."""
    S = frozenset(S)
    out = list(D)
    for v in S:
        for w in g.neighbors(v):
            if w not in S:
                m = g.multiplicity(v, w)
                out[g.index(v)] -= m
                out[g.index(w)] += m
    return tuple(out)


def dhar_unburnt(g: Multigraph, D: Divisor, q: str) -> frozenset:
    """Vertices left unburned by a fire started at q.

    A vertex v != q burns once the multiplicity of its burnt incident edges
    exceeds D_v.  Requires D nonnegative away from q.
    """
    for v in g.vertices:
        if v != q and D[g.index(v)] < 0:
            raise ValueError("divisor is negative at %r (off-sink)" % v)
    burnt = {q}
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in burnt:
                continue
            heat = sum(g.multiplicity(v, w) for w in g.neighbors(v) if w in burnt)
            if heat > D[g.index(v)]:
                burnt.add(v)
                changed = True
    return frozenset(set(g.vertices) - burnt)


def _distance_layers(g: Multigraph, q: str):
    """BFS layers from q: layers[i] is the set of vertices at distance i."""
    layers = [{q}]
    seen = {q}
    while True:
        nxt = set()
        for v in layers[-1]:
            for w in g.neighbors(v):
                if w not in seen:
                    nxt.add(w)
                    seen.add(w)
        if not nxt:
            return layers
        layers.append(nxt)


def _q_reduce_with_script(g: Multigraph, D: Divisor, q: str):
    """Return (reduced divisor, nonnegative script) with D - L*script = reduced."""
    sigma = [0] * len(g)
    current = D

    # Phase 1: push chips outward from q, fixing layers in decreasing
    # distance order, until every off-sink entry is nonnegative.  Firing the
    # set {dist < i} adds chips to every layer-i vertex and touches no layer
    # beyond i.
    layers = _distance_layers(g, q)
    for i in range(len(layers) - 1, 0, -1):
        inner = frozenset().union(*layers[:i])
        steps = 0
        for v in layers[i]:
            deficit = -current[g.index(v)]
            if deficit > 0:
                gain = sum(g.multiplicity(v, w)
                           for w in g.neighbors(v) if w in inner)
                steps = max(steps, -(-deficit // gain))
        if steps:
            for v in inner:
                sigma[g.index(v)] += steps
            for _ in range(steps):
                current = fire_set(g, current, inner)

    # Phase 2: Dhar loop; fire the unburnt set until everything burns.
    while True:
        unburnt = dhar_unburnt(g, current, q)
        if not unburnt:
            return current, tuple(sigma)
        for v in unburnt:
            sigma[g.index(v)] += 1
        current = fire_set(g, current, unburnt)


@lru_cache(maxsize=None)
def q_reduce(g: Multigraph, D: Divisor, q: str) -> Divisor:
    """The unique equivalent divisor that is superstable away from q.

    Chips at q are unconstrained (and may be negative).
    """
    return _q_reduce_with_script(g, D, q)[0]


def canonical_sink(g: Multigraph) -> str:
    return g.vertices[0]


def class_key(g: Multigraph, D: Divisor, q: Optional[str] = None) -> DivisorClassKey:
    """Value identifying D's class: two divisors are equivalent iff their
    keys (same sink) are equal."""
    if q is None:
        q = canonical_sink(g)
    return DivisorClassKey(q, q_reduce(g, D, q))


def equivalence_script(g: Multigraph, D0: Divisor, D1: Divisor) -> Optional[Script]:
    """The unique canonical script with D0 - L*sigma = D1, or None.

    Canonical means sigma >= 0 with minimum entry 0.
    """
    if degree(D0) != degree(D1):
        return None
    q = canonical_sink(g)
    r0, s0 = _q_reduce_with_script(g, D0, q)
    r1, s1 = _q_reduce_with_script(g, D1, q)
    if r0 != r1:
        return None
    diff = [a - b for a, b in zip(s0, s1)]
    low = min(diff)
    sigma = tuple(x - low for x in diff)
    assert apply_script(g, D0, sigma) == D1
    return sigma


def _compositions(total: int, parts: int):
    """Weak compositions of `total` into `parts` nonnegative integers."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


@lru_cache(maxsize=None)
def _class_buckets(g: Multigraph, d: int, q: str):
    """All effective divisors of degree d, grouped by reduced representative."""
    buckets = {}
    for comp in _compositions(d, len(g)):
        buckets.setdefault(q_reduce(g, comp, q), []).append(comp)
    return {key: tuple(sorted(vals)) for key, vals in buckets.items()}


def linear_system(g: Multigraph, D: Divisor) -> frozenset:
    """|D|: every effective divisor equivalent to D."""
    d = degree(D)
    if d < 0:
        return frozenset()
    q = canonical_sink(g)
    buckets = _class_buckets(g, d, q)
    return frozenset(buckets.get(q_reduce(g, D, q), ()))


def is_superstable(g: Multigraph, D: Divisor, q: str) -> bool:
    """G-parking test: no q-avoiding set firing keeps D effective."""
    if any(D[g.index(v)] < 0 for v in g.vertices if v != q):
        return False
    return not dhar_unburnt(g, D, q)


@lru_cache(maxsize=None)
def enumerate_superstables(g: Multigraph, q: str) -> tuple:
    """All superstable divisors with 0 chips at q, in sorted order.

    Any candidate with c_v >= deg(v) somewhere is unstable, so the scan is
    bounded by vertex degrees.
    """
    others = [v for v in g.vertices if v != q]
    found = []
    for values in product(*[range(g.degree(v)) for v in others]):
        chips = [0] * len(g)
        for v, x in zip(others, values):
            chips[g.index(v)] = x
        D = tuple(chips)
        if not dhar_unburnt(g, D, q):
            found.append(D)
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def enumerate_maximal_superstables(g: Multigraph, q: str) -> tuple:
    """Superstables c such that c + 1_v breaks superstability for all v != q."""
    superstables = set(enumerate_superstables(g, q))
    out = []
    for c in superstables:
        maximal = True
        for v in g.vertices:
            if v == q:
                continue
            bumped = list(c)
            bumped[g.index(v)] += 1
            if tuple(bumped) in superstables:
                maximal = False
                break
        if maximal:
            out.append(c)
    return tuple(sorted(out))


def is_stable(g: Multigraph, D: Divisor) -> bool:
    return all(D[g.index(v)] < g.degree(v) for v in g.vertices)


def is_alive(g: Multigraph, D: Divisor) -> bool:
    """True iff |D| contains no stable divisor (vacuously true when empty)."""
    return not any(is_stable(g, E) for E in linear_system(g, D))


def is_minimally_alive(g: Multigraph, D: Divisor) -> bool:
    """Alive, and removing any single chip kills aliveness."""
    if not is_alive(g, D):
        return False
    for v in g.vertices:
        lowered = list(D)
        lowered[g.index(v)] -= 1
        if is_alive(g, tuple(lowered)):
            return False
    return True
