"""Undirected, connected, loopless multigraphs with integer edge multiplicities.

Vertices are opaque strings.  The vertex order is fixed at construction
(first-appearance order when loaded from text) and is used for all matrix
and divisor indexing.  Edge multiplicities live in a symmetric pair-keyed
mapping; the Laplacian is materialized on demand.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Base class for graph construction/validation errors."""


class EmptyGraphError(GraphError):
    """Raised when the input contains no vertices or no usable records."""


class LoopError(GraphError):
    """Raised when an edge joins a vertex to itself."""


class MultiplicityError(GraphError):
    """Raised for non-positive or non-integer edge multiplicities."""


class DisconnectedError(GraphError):
    """Raised when the underlying simple graph is not connected."""


class FormatError(GraphError):
    """Raised for malformed edge-list records."""


def _pair(u: str, v: str) -> frozenset:
    return frozenset((u, v))


class Multigraph:
    """Immutable multigraph.  Safe to share across workers and to hash."""

    __slots__ = ("vertices", "mult", "_index", "_adj", "_hash")

    def __init__(self, vertices: Iterable[str], mult: Mapping[frozenset, int]):
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise EmptyGraphError("graph has no vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise FormatError("duplicate vertex identifiers")
        self.mult = {}
        for pair, m in mult.items():
            us = tuple(pair)
            if len(us) != 2:
                raise LoopError("loop edge %r is not allowed" % (set(pair),))
            if us[0] not in self.vertices or us[1] not in self.vertices:
                raise FormatError("edge %r uses unknown vertex" % (set(pair),))
            if not isinstance(m, int) or m <= 0:
                raise MultiplicityError(
                    "multiplicity of %r must be a positive integer, got %r"
                    % (set(pair), m))
            self.mult[_pair(*us)] = m
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._adj = {v: set() for v in self.vertices}
        for pair in self.mult:
            u, v = tuple(pair)
            self._adj[u].add(v)
            self._adj[v].add(u)
        self._check_connected()
        self._hash = hash((self.vertices, frozenset(self.mult.items())))

    def _check_connected(self):
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise DisconnectedError(
                "graph is disconnected; unreachable: %s"
                % sorted(set(self.vertices) - seen))

    # -- basic queries -----------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return (isinstance(other, Multigraph)
                and self.vertices == other.vertices
                and self.mult == other.mult)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Multigraph(%d vertices, %d edges)" % (len(self), self.edge_count())

    def index(self, v: str) -> int:
        return self._index[v]

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def multiplicity(self, u: str, v: str) -> int:
        return self.mult.get(_pair(u, v), 0)

    def neighbors(self, v: str) -> frozenset:
        return frozenset(self._adj[v])

    def degree(self, v: str) -> int:
        return sum(self.mult[_pair(v, w)] for w in self._adj[v])

    def edge_count(self) -> int:
        """Total edge multiplicity."""
        return sum(self.mult.values())

    def simple_pairs(self):
        """Unordered vertex pairs joined by at least one edge."""
        return list(self.mult)


def load_graph(text: str) -> Multigraph:
    """Parse an edge-list document into a Multigraph.

    One record per line: ``<u> <v> <m>`` with whitespace separation; ``m``
    omitted means 1.  Lines beginning with ``#`` are comments.  Duplicate
    pair lines accumulate multiplicities.  Vertex order is first-appearance
    order.
    """
    vertices = []
    seen = set()
    mult = {}
    records = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise FormatError("line %d: expected '<u> <v> [<m>]'" % lineno)
        u, v = parts[0], parts[1]
        if u == v:
            raise LoopError("line %d: loop edge %s %s" % (lineno, u, v))
        try:
            m = int(parts[2]) if len(parts) == 3 else 1
        except ValueError:
            raise MultiplicityError(
                "line %d: multiplicity %r is not an integer" % (lineno, parts[2]))
        if m <= 0:
            raise MultiplicityError(
                "line %d: multiplicity must be positive, got %d" % (lineno, m))
        for w in (u, v):
            if w not in seen:
                seen.add(w)
                vertices.append(w)
        key = _pair(u, v)
        mult[key] = mult.get(key, 0) + m
        records += 1
    if records == 0:
        raise EmptyGraphError("no edge records in input")
    if len(vertices) < 2:
        raise EmptyGraphError("need at least 2 vertices")
    return Multigraph(vertices, mult)


def serialize_graph(g: Multigraph) -> str:
    """Edge-list form that round-trips through load_graph.

    Edges are ordered so that first appearances reproduce the vertex order:
    ascending by the later endpoint, and within that group the edge whose
    earlier endpoint is latest comes first (it may introduce two vertices
    at once).  Endpoints are written in vertex order.
    """
    def key(pair):
        i, j = sorted(g.index(v) for v in pair)
        return (j, -i)

    lines = []
    for pair in sorted(g.mult, key=key):
        u, v = sorted(pair, key=g.index)
        lines.append("%s %s %d" % (u, v, g.mult[pair]))
    return "\n".join(lines) + "\n"


def laplacian(g: Multigraph):
    """The n x n integer Laplacian as a tuple of row tuples."""
    n = len(g)
    rows = []
    for u in g.vertices:
        row = [0] * n
        row[g.index(u)] = g.degree(u)
        for w in g._adj[u]:
            row[g.index(w)] = -g.multiplicity(u, w)
        rows.append(tuple(row))
    return tuple(rows)


def crossing_degree(g: Multigraph, A, B, v: str) -> int:
    """Number of edges at v (with multiplicity) between vertex sets A and B."""
    A = frozenset(A)
    B = frozenset(B)
    if A & B:
        raise ValueError("A and B must be disjoint")
    if not g.has_vertex(v):
        raise ValueError("unknown vertex %r" % v)
    if v in A:
        other = B
    elif v in B:
        other = A
    else:
        return 0
    return sum(g.multiplicity(v, w) for w in g.neighbors(v) if w in other)


def neighbor_set(g: Multigraph, A) -> frozenset:
    """Vertices at graph distance exactly 1 from A."""
    A = frozenset(A)
    out = set()
    for v in A:
        out |= g._adj[v]
    return frozenset(out - A)


def spanning_tree_count(g: Multigraph) -> int:
    """Number of spanning trees via the matrix-tree theorem.

    Computed as any principal minor of the Laplacian, with exact
    fraction-free elimination.
    """
    L = laplacian(g)
    n = len(g)
    if n == 1:
        return 1
    minor = [[Fraction(L[i][j]) for j in range(1, n)] for i in range(1, n)]
    det = Fraction(1)
    size = n - 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if minor[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            minor[col], minor[pivot] = minor[pivot], minor[col]
            det = -det
        det *= minor[col][col]
        for r in range(col + 1, size):
            factor = minor[r][col] / minor[col][col]
            for c in range(col, size):
                minor[r][c] -= factor * minor[col][c]
    assert det.denominator == 1
    return abs(int(det))
