"""Extension cycles and the witness construction for multi-edged trees.

An extension cycle is built over an abstract base face [1..k] with one
extension vertex per base position; with the right sign per admissible
index set the faces sum to a simplicial cycle.  On multi-edged trees a
concrete instance of this cycle inside a boundary divisor's support
complex certifies a nonzero top-layer Betti number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .divisors import Divisor, class_key, support
from .homology import (SimplicialComplex, boundary_terms, chain_is_boundary,
                       complex_of_divisor, make_complex)
from .multigraph import Multigraph
from .orientations import enumerate_acyclic_orientations, f_map
from .partitions import (ConnectedPartition, boundary_set, quotient)


class SpecError(ValueError):
    """Extension spec violates the labeling convention."""


class WitnessError(RuntimeError):
    """The witness construction failed a membership or cycle check."""


class NotATreeError(ValueError):
    pass


# -- signed chains -------------------------------------------------------------


@dataclass(frozen=True)
class SignedChain:
    """Formal rational combination of equal-size sorted faces."""
    coeffs: tuple  # ((face tuple, Fraction), ...) sorted

    @staticmethod
    def from_dict(mapping) -> "SignedChain":
        items = tuple(sorted((tuple(face), Fraction(c))
                             for face, c in mapping.items() if c != 0))
        sizes = {len(face) for face, _ in items}
        if len(sizes) > 1:
            raise ValueError("chain mixes face dimensions")
        return SignedChain(items)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def faces(self) -> tuple:
        return tuple(face for face, _ in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)


def boundary_of_chain(chain: SignedChain) -> SignedChain:
    """Linear extension of the simplex boundary map (0-faces map to the
    empty face)."""
    acc = {}
    for face, c in chain.coeffs:
        for child, sign in boundary_terms(face):
            acc[child] = acc.get(child, Fraction(0)) + sign * c
    return SignedChain.from_dict(acc)


def chain_to_string(chain: SignedChain, names=None) -> str:
    """``+[2,4,5,6] -[2,3,4,5] ...`` with canonical face ordering."""
    parts = []
    for face, c in chain.coeffs:
        shown = [names[v] if names else str(v) for v in face]
        sign = "+" if c > 0 else "-"
        mag = abs(c)
        coeff = "" if mag == 1 else str(mag)
        parts.append("%s%s[%s]" % (sign, coeff, ",".join(shown)))
    return " ".join(parts)


# -- abstract extension cycles --------------------------------------------------


@dataclass(frozen=True)
class ExtensionSpec:
    """Base face [1..k] plus one extension vertex per base position.

    extensions[j-1] is e_j, a label in [k+1, 2k]; the labeling convention
    e_i >= e_j for i <= j is required, not applied silently (use
    relabel_assignment to build a conforming spec from raw data).
    """
    k: int
    extensions: tuple

    def __post_init__(self):
        if self.k < 1:
            raise SpecError("base must have at least one vertex")
        if len(self.extensions) != self.k:
            raise SpecError("need exactly one extension vertex per base vertex")
        for e in self.extensions:
            if not self.k + 1 <= e <= 2 * self.k:
                raise SpecError("extension label %r outside [k+1, 2k]" % (e,))
        for i in range(self.k - 1):
            if self.extensions[i] < self.extensions[i + 1]:
                raise SpecError("extension labels must be non-increasing "
                                "along base positions")

    def admissible_sets(self) -> tuple:
        """Index sets J whose extension vertices are pairwise distinct."""
        out = []
        for r in range(self.k + 1):
            for J in combinations(range(1, self.k + 1), r):
                es = [self.extensions[j - 1] for j in J]
                if len(set(es)) == len(es):
                    out.append(frozenset(J))
        return tuple(out)

    def sign(self, J) -> int:
        s = 1
        for j in J:
            s *= (-1) ** (j - 1 + self.k)
        return s

    def face(self, J) -> tuple:
        kept = [j for j in range(1, self.k + 1) if j not in J]
        added = sorted({self.extensions[j - 1] for j in J})
        return tuple(sorted(kept + added))

    def layer_of(self, J) -> int:
        return len(J)


def extension_cycle(spec: ExtensionSpec) -> SignedChain:
    """The signed face family over all admissible index sets; a cycle."""
    acc = {}
    for J in spec.admissible_sets():
        acc[spec.face(J)] = acc.get(spec.face(J), 0) + spec.sign(J)
    return SignedChain.from_dict(acc)


def cycle_layers(spec: ExtensionSpec) -> dict:
    """Faces by layer: 0 = base, 1 = extensions, >=2 = roof faces."""
    layers = {}
    for J in spec.admissible_sets():
        layers.setdefault(len(J), set()).add(spec.face(J))
    return {layer: tuple(sorted(faces)) for layer, faces in layers.items()}


def relabel_assignment(items):
    """Turn concrete (base vertex, extension vertex) pairs into a conforming
    abstract spec plus the label translation.

    items: sequence of (base, ext) with orderable, distinct base values and
    ext values disjoint from the bases.  Returns (spec, mapping) where
    mapping translates abstract labels back to the concrete values.
    """
    k = len(items)
    distinct_exts = sorted({ext for _, ext in items}, reverse=True)
    ext_label = {ext: 2 * k - rank for rank, ext in enumerate(distinct_exts)}
    # base position 1 gets the largest abstract extension label
    ordered = sorted(items, key=lambda be: (-ext_label[be[1]], be[0]))
    mapping = {}
    extensions = []
    for pos, (base, ext) in enumerate(ordered, start=1):
        mapping[pos] = base
        extensions.append(ext_label[ext])
    for ext, label in ext_label.items():
        mapping[label] = ext
    return ExtensionSpec(k, tuple(extensions)), mapping


def _permutation_sign(values) -> int:
    inversions = sum(1
                     for i in range(len(values))
                     for j in range(i + 1, len(values))
                     if values[i] > values[j])
    return -1 if inversions % 2 else 1


def map_chain(chain: SignedChain, mapping) -> SignedChain:
    """Relabel a chain's vertices through an injective mapping, adjusting
    each coefficient by the parity of the sort permutation."""
    acc = {}
    for face, c in chain.coeffs:
        image = [mapping[v] for v in face]
        sign = _permutation_sign(image)
        acc[tuple(sorted(image))] = sign * c
    return SignedChain.from_dict(acc)


# -- partitions, essential faces and the tree map -------------------------------


def is_essential(g: Multigraph, face, part: ConnectedPartition,
                 distinguished: int = 0) -> bool:
    """True iff the face has one vertex in every block except the
    distinguished one (and none there)."""
    face = frozenset(face)
    k = len(part) - 1
    if len(face) != k:
        return False
    for j, block in enumerate(part.blocks):
        idxs = {g.index(v) for v in block}
        hit = len(face & idxs)
        if j == distinguished:
            if hit:
                return False
        elif hit != 1:
            return False
    return True


def require_multi_edged_tree(g: Multigraph):
    if len(g.simple_pairs()) != len(g) - 1:
        raise NotATreeError("underlying simple graph is not a tree")


def T_map(g: Multigraph, part: ConnectedPartition,
          distinguished: int = 0) -> dict:
    """Step-toward-root map on blocks of a multi-edged tree: every block
    maps to its unique neighbor one step closer to the distinguished block
    (which maps to itself)."""
    require_multi_edged_tree(g)
    q = quotient(g, part)
    labels = q.labels()
    root = labels[distinguished]
    parent = {root: root}
    frontier = [root]
    while frontier:
        nxt = []
        for lab in frontier:
            for other in q.simple.neighbors(lab):
                if other not in parent:
                    parent[other] = lab
                    nxt.append(other)
        frontier = nxt
    label_index = {lab: i for i, lab in enumerate(labels)}
    return {label_index[lab]: label_index[parent[lab]] for lab in labels}


# -- boundary complexes and the witness ------------------------------------------


def orientation_class(g: Multigraph, part: ConnectedPartition, D: Divisor):
    """O(D): acyclic orientations of the simple quotient whose f-image is
    equivalent to D."""
    q = quotient(g, part)
    key = class_key(g, D)
    return frozenset(o for o in enumerate_acyclic_orientations(q)
                     if class_key(g, f_map(g, part, o)) == key)


def boundary_complex(g: Multigraph, part: ConnectedPartition,
                     D: Divisor) -> SimplicialComplex:
    """Support complex of the f-images over D's orientation class; a
    subcomplex of the divisor's full support complex."""
    members = orientation_class(g, part, D)
    if not members:
        raise ValueError("divisor is not in any orientation class for this "
                         "partition")
    facets = [frozenset(g.index(v) for v in support(g, f_map(g, part, o)))
              for o in members]
    return make_complex(facets)


def tree_witness_cycle(g: Multigraph, part: ConnectedPartition,
                       D: Divisor) -> SignedChain:
    """Extension cycle inside the boundary complex with exactly one
    essential face; being nonzero in homology it certifies a positive fine
    Betti number at the partition's layer.

    Base vertices come from the toward-root boundaries, extension vertices
    from the first nonempty boundary further along the toward-root walk;
    ties break to the least vertex.
    """
    require_multi_edged_tree(g)
    k = len(part) - 1
    if k < 1:
        raise ValueError("partition needs at least 2 blocks")
    bc = boundary_complex(g, part, D)  # validates D is a boundary divisor
    toward = T_map(g, part)

    base = {}
    for j in range(1, k + 1):
        cand = boundary_set(g, part, j, [toward[j]])
        if not cand:
            raise WitnessError("block %d has empty toward-root boundary" % j)
        base[j] = min(cand, key=g.index)
    base_names = set(base.values())

    exts = {}
    for j in range(1, k + 1):
        cur = j
        while True:
            parent = toward[cur]
            cand = boundary_set(g, part, parent, [cur]) - base_names
            if cand:
                exts[j] = min(cand, key=g.index)
                break
            if parent == 0:
                raise WitnessError(
                    "no extension vertex found walking from block %d" % j)
            cur = parent

    items = [(g.index(base[j]), g.index(exts[j])) for j in range(1, k + 1)]
    spec, mapping = relabel_assignment(items)
    chain = map_chain(extension_cycle(spec), mapping)

    for face in chain.faces():
        if not bc.has_face(face):
            raise WitnessError("face %s is missing from the boundary complex"
                               % (face,))
    if not boundary_of_chain(chain).is_zero:
        raise WitnessError("constructed chain is not a cycle")
    essential = [face for face in chain.faces()
                 if is_essential(g, face, part)]
    expected_base = tuple(sorted(g.index(v) for v in base.values()))
    if essential != [expected_base]:
        raise WitnessError("cycle does not contain exactly one essential "
                           "face (the base)")
    return chain


def witness_certifies_nonzero_homology(g: Multigraph, D: Divisor,
                                       chain: SignedChain) -> bool:
    """Exact infeasibility certificate: the witness is not a boundary in the
    divisor's full support complex."""
    K = complex_of_divisor(g, D)
    return not chain_is_boundary(K, chain.as_dict())
