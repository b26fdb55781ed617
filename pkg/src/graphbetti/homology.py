"""Support complexes, exact rational homology, fine/coarse Betti numbers.

All homology is computed over the rationals with exact arithmetic; for
these complexes the dimensions agree with those over the complex numbers,
so Hochster's reading of Betti numbers applies verbatim.

Faces are tuples of vertex indices in ascending order.  The boundary map
is the usual alternating-sign simplex boundary, extended down to the empty
face (reduced/augmented convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .divisors import (Divisor, canonical_sink, class_key, degree,
                       enumerate_superstables, linear_system, q_reduce,
                       divisor_to_string, equivalence_script, dhar_unburnt,
                       fire_set)
from .multigraph import Multigraph
from .orientations import boundary_divisor_classes


class CutRecoveryError(RuntimeError):
    """Raised when the constructive cut-recovery verification fails."""


# -- complexes ---------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed face family given by its facets (vertex-index sets).

    An empty facet set is the void complex; a single empty facet is the
    complex containing only the empty face.
    """
    facets: frozenset

    @property
    def is_void(self) -> bool:
        return not self.facets

    def vertices(self) -> frozenset:
        out = set()
        for f in self.facets:
            out |= f
        return frozenset(out)

    def has_face(self, face) -> bool:
        face = frozenset(face)
        return any(face <= facet for facet in self.facets)

    def faces_of_dim(self, dim: int) -> tuple:
        """Sorted tuple of faces with dim+1 vertices (dim=-1: empty face)."""
        if self.is_void:
            return ()
        if dim == -1:
            return ((),)
        out = set()
        for facet in self.facets:
            if len(facet) >= dim + 1:
                for combo in combinations(sorted(facet), dim + 1):
                    out.add(combo)
        return tuple(sorted(out))

    def top_dim(self) -> int:
        if self.is_void:
            return -2
        return max(len(f) for f in self.facets) - 1

    def connected_components(self) -> tuple:
        """Vertex sets of the components of the complex, sorted."""
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for facet in self.facets:
            for v in facet:
                parent.setdefault(v, v)
        for facet in self.facets:
            vs = sorted(facet)
            for a, b in zip(vs, vs[1:]):
                parent[find(a)] = find(b)
        comps = {}
        for v in parent:
            comps.setdefault(find(v), set()).add(v)
        return tuple(sorted((frozenset(c) for c in comps.values()),
                            key=sorted))


def make_complex(facets) -> SimplicialComplex:
    """Build a complex from candidate facets, dropping non-maximal ones."""
    sets = {frozenset(f) for f in facets}
    maximal = {f for f in sets
               if not any(f < other for other in sets)}
    return SimplicialComplex(frozenset(maximal))


def boundary_terms(face: tuple):
    """Children of a sorted face with alternating signs; a 0-face maps to
    the empty face (augmentation)."""
    for j in range(len(face)):
        child = face[:j] + face[j + 1:]
        yield child, (-1) ** j


# -- exact linear algebra ----------------------------------------------------


def matrix_rank(rows) -> int:
    """Rank of a matrix (lists of ints/Fractions) over the rationals."""
    rows = [[Fraction(x) for x in row] for row in rows if row]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(rows)) if rows[r][col] != 0),
                     None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [x * inv for x in rows[row]]
        for r in range(len(rows)):
            if r != row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[row])]
        rank += 1
        row += 1
        if row == len(rows):
            break
    return rank


def _boundary_matrix(K: SimplicialComplex, dim: int):
    """Matrix of the boundary map C_dim -> C_{dim-1} (rows = children)."""
    cols = K.faces_of_dim(dim)
    rows = K.faces_of_dim(dim - 1)
    index = {face: i for i, face in enumerate(rows)}
    matrix = [[0] * len(cols) for _ in rows]
    for c, face in enumerate(cols):
        for child, sign in boundary_terms(face):
            matrix[index[child]][c] = sign
    return matrix, rows, cols


@lru_cache(maxsize=None)
def _homology_ranks(K: SimplicialComplex, max_dim: int):
    dims = {}
    ranks = {}
    for i in range(0, max_dim + 2):
        matrix, _, cols = _boundary_matrix(K, i)
        ranks[i] = matrix_rank(matrix) if cols else 0
    for i in range(-1, max_dim + 1):
        n_i = len(K.faces_of_dim(i))
        rank_in = ranks.get(i, 0) if i >= 0 else 0
        dims[i] = n_i - rank_in - ranks.get(i + 1, 0)
    return dims


def reduced_homology_dims(K: SimplicialComplex, max_dim: int) -> dict:
    """dim of the i-th reduced homology over Q, for i in -1..max_dim."""
    return dict(_homology_ranks(K, max_dim))


# -- Betti numbers of divisors ------------------------------------------------


def complex_of_divisor(g: Multigraph, D: Divisor) -> SimplicialComplex:
    """Faces = subsets of supports of effective divisors equivalent to D."""
    members = linear_system(g, D)
    if not members:
        return SimplicialComplex(frozenset())
    facets = [frozenset(i for i, x in enumerate(E) if x != 0)
              for E in members]
    return make_complex(facets)


def betti_kD(g: Multigraph, D: Divisor, k: int) -> int:
    """Fine Betti number via Hochster: dim of the (k-1)-st reduced homology
    of the divisor's support complex."""
    if k < 1:
        raise ValueError("k must be >= 1")
    K = complex_of_divisor(g, D)
    if K.is_void:
        return 0
    return reduced_homology_dims(K, k - 1).get(k - 1, 0)


@dataclass(frozen=True)
class BettiRow:
    reduced: Divisor
    deg: int
    betti: tuple  # ((k, value), ...) sorted by k


@dataclass(frozen=True)
class BettiReport:
    sink: str
    window: tuple
    ks: tuple
    rows: tuple
    coarse: tuple  # ((k, total), ...) sorted by k
    warnings: tuple = ()

    def coarse_value(self, k: int) -> int:
        return dict(self.coarse)[k]

    def to_json_dict(self, g: Multigraph) -> dict:
        return {
            "classes": [
                {"reduced": divisor_to_string(g, row.reduced),
                 "degree": row.deg,
                 "betti": {str(k): v for k, v in row.betti}}
                for row in self.rows
            ],
            "coarse": {str(k): v for k, v in self.coarse},
            "sink": self.sink,
            "window": list(self.window),
            "warnings": list(self.warnings),
        }


def class_scan_representatives(g: Multigraph, window) -> list:
    """One representative per divisor class with a chance of nonzero Betti
    numbers in the degree window: superstable part + remaining chips at the
    sink.  Classes whose representative would be negative at the sink have
    empty linear systems and are skipped."""
    lo, hi = window
    q = canonical_sink(g)
    qi = g.index(q)
    reps = []
    for c in enumerate_superstables(g, q):
        for d in range(lo, hi + 1):
            extra = d - degree(c)
            if extra < 0:
                continue
            rep = list(c)
            rep[qi] += extra
            reps.append(tuple(rep))
    return sorted(reps)


def betti_table_for_rep(g: Multigraph, rep: Divisor, ks) -> dict:
    K = complex_of_divisor(g, rep)
    if K.is_void:
        return {k: 0 for k in ks}
    dims = reduced_homology_dims(K, max(ks) - 1)
    return {k: dims.get(k - 1, 0) for k in ks}


def coarse_betti(g: Multigraph, ks, window, map_tables=None) -> BettiReport:
    """Scan class representatives over a degree window and sum fine Betti
    numbers into coarse ones.  Rows list only classes with a nonzero entry.

    map_tables, when given, is a callable (g, reps, ks) -> {rep: table}
    letting callers compute the per-representative tables in parallel.
    """
    ks = tuple(sorted(set(ks)))
    if not ks or any(k < 1 for k in ks):
        raise ValueError("requested k values must be >= 1")
    lo, hi = window
    if lo > hi:
        raise ValueError("empty degree window")
    reps = class_scan_representatives(g, window)
    if map_tables is None:
        tables = {rep: betti_table_for_rep(g, rep, ks) for rep in reps}
    else:
        tables = map_tables(g, reps, ks)
    totals = {k: 0 for k in ks}
    rows = []
    boundary_hits = set()
    for rep in reps:
        table = tables[rep]
        if any(table[k] for k in ks):
            rows.append(BettiRow(q_reduce(g, rep, canonical_sink(g)),
                                 degree(rep),
                                 tuple(sorted(table.items()))))
            for k in ks:
                totals[k] += table[k]
            if degree(rep) == hi:
                boundary_hits.add(degree(rep))
    warnings = tuple(
        "nonzero Betti numbers at the window boundary (degree %d); widen "
        "--degree-window to confirm completeness" % d
        for d in sorted(boundary_hits))
    return BettiReport(canonical_sink(g), (lo, hi), ks, tuple(rows),
                       tuple(sorted(totals.items())), warnings)


# -- splittings and cut recovery ----------------------------------------------


def splittings(g: Multigraph, D: Divisor) -> frozenset:
    """Bipartitions of |D| keeping each component's composing divisors
    together.  Empty unless the support complex is disconnected."""
    members = linear_system(g, D)
    K = complex_of_divisor(g, D)
    comps = K.connected_components()
    if len(comps) < 2:
        return frozenset()
    supports = {E: frozenset(i for i, x in enumerate(E) if x != 0)
                for E in members}
    comp_of = {}
    for E, supp in supports.items():
        for idx, comp in enumerate(comps):
            if supp <= comp:
                comp_of[E] = idx
                break
        else:
            raise AssertionError("member support crosses components")
    out = []
    c = len(comps)
    for mask in range(1, 2 ** (c - 1)):
        side_a = frozenset(E for E in members if mask >> comp_of[E] & 1)
        side_b = frozenset(members) - side_a
        out.append(frozenset((side_a, side_b)))
    return frozenset(out)


def _dhar_walk(g: Multigraph, start: Divisor, s: str):
    """Effective divisors visited by iterating Dhar set-firings toward s."""
    walk = [start]
    current = start
    while True:
        unburnt = dhar_unburnt(g, current, s)
        if not unburnt:
            return walk
        current = fire_set(g, current, unburnt)
        walk.append(current)


def cut_from_splitting(g: Multigraph, D: Divisor, split):
    """Recover the cut hiding behind a splitting of |D|.

    Walks Dhar iterations from one side until they cross to the other;
    the edges between the supports of the two consecutive divisors at the
    crossing form a cut whose boundary divisors are equivalent to D.
    Returns (cut partition, (member on the start side, member on the other)).
    """
    side_a, side_b = sorted(split, key=sorted)
    d0 = min(side_a)
    d1 = min(side_b)
    sigma = equivalence_script(g, d0, d1)
    if sigma is None:
        raise CutRecoveryError("splitting sides are not equivalent divisors")
    outside = [v for v in g.vertices if sigma[g.index(v)] == 0]
    s = outside[0]

    # walk from whichever side the s-reduced form does NOT land on, so the
    # walk is guaranteed to cross the splitting
    reduced = q_reduce(g, d0, s)
    start = d1 if reduced in side_a else d0
    walk = _dhar_walk(g, start, s)
    in_a = {E: (E in side_a) for E in walk}
    crossing = next((t for t in range(len(walk) - 1)
                     if in_a[walk[t]] != in_a[walk[t + 1]]), None)
    if crossing is None:
        raise CutRecoveryError("Dhar walk never crossed the splitting")
    before, after = walk[crossing], walk[crossing + 1]
    s_before = frozenset(g.vertices[i] for i, x in enumerate(before) if x)
    s_after = frozenset(g.vertices[i] for i, x in enumerate(after) if x)
    if s_before & s_after:
        raise CutRecoveryError("crossing supports are not disjoint")
    severed = {pair for pair in g.mult
               if len(pair & s_before) == 1 and len(pair & s_after) == 1}

    # components of G minus the severed edges
    remaining = {v: set() for v in g.vertices}
    for pair in g.mult:
        if pair in severed:
            continue
        u, v = tuple(pair)
        remaining[u].add(v)
        remaining[v].add(u)
    comps = []
    seen = set()
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            for w in remaining[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    if len(comps) != 2:
        raise CutRecoveryError(
            "severed edges do not split the graph into two components")
    from .partitions import make_partition
    cut = make_partition(g, comps)
    if class_key(g, D) not in boundary_divisor_classes(g, cut):
        raise CutRecoveryError(
            "recovered cut's boundary divisor is not equivalent to D")
    return cut, (before, after)


def chain_is_boundary(K: SimplicialComplex, coeffs: dict) -> bool:
    """Exact feasibility of `chain = boundary(x)` for some chain x one
    dimension up.  coeffs maps sorted face tuples to rational coefficients."""
    if not coeffs:
        return True
    dim = len(next(iter(coeffs))) - 1
    matrix, rows, cols = _boundary_matrix(K, dim + 1)
    index = {face: i for i, face in enumerate(rows)}
    rhs = [Fraction(0)] * len(rows)
    for face, value in coeffs.items():
        if face not in index:
            raise ValueError("chain face %r is not in the complex" % (face,))
        rhs[index[face]] = Fraction(value)
    if not cols:
        return all(x == 0 for x in rhs)
    aug = [[Fraction(x) for x in row] + [rhs[i]]
           for i, row in enumerate(matrix)]
    plain_rank = matrix_rank(matrix)
    aug_rank = matrix_rank(aug)
    return plain_rank == aug_rank
