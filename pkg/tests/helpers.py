"""Shared test utilities: example graphs, random generators, property
family runners and the exhaustive small-graph corpus."""

from itertools import combinations, product

from graphbetti.cycles import ExtensionSpec, boundary_of_chain, extension_cycle
from graphbetti.divisors import (canonical_sink, class_key,
                                 enumerate_maximal_superstables,
                                 is_minimally_alive, linear_system)
from graphbetti.homology import betti_table_for_rep, class_scan_representatives
from graphbetti.multigraph import (GraphError, Multigraph, load_graph,
                                   spanning_tree_count)
from graphbetti.orientations import (boundary_divisor_classes,
                                     canonical_source_block, enumerate_AUS,
                                     enumerate_acyclic_orientations, f_map,
                                     orientations_equivalent)
from graphbetti.partitions import (enumerate_connected_partitions,
                                   make_partition, quotient)

EXAMPLE_EDGES = "a b 1\na c 1\nb c 2\nb d 1\nc d 3\n"
TREE_EDGES = "1 2 1\n2 3 3\n2 4 1\n3 5 1\n5 6 1\n"


def example_graph():
    return load_graph(EXAMPLE_EDGES)


def tree_graph():
    return load_graph(TREE_EDGES)


def random_multigraph(rng, max_n=6, max_mult=2, max_extra=2,
                      min_n=2) -> Multigraph:
    """Random connected multigraph: spanning tree plus a few extra edges."""
    n = rng.randint(min_n, max_n)
    names = [chr(ord("a") + i) for i in range(n)]
    mult = {}
    for i in range(1, n):
        j = rng.randrange(i)
        mult[frozenset((names[i], names[j]))] = rng.randint(1, max_mult)
    for _ in range(rng.randint(0, max_extra)):
        i, j = rng.sample(range(n), 2)
        key = frozenset((names[i], names[j]))
        mult[key] = mult.get(key, 0) + rng.randint(1, max_mult)
    return Multigraph(names, mult)


def random_partition(rng, g, min_blocks=2):
    parts = rng.randint(min_blocks, len(g))
    options = sorted(enumerate_connected_partitions(g, parts),
                     key=lambda p: p.blocks)
    return rng.choice(options)


# -- property families (criterion-6 suites) ------------------------------------


def run_extension_cycle_family(rng, cases):
    """Random specs with k <= 5 always have zero boundary."""
    for _ in range(cases):
        k = rng.randint(1, 5)
        exts = tuple(sorted((rng.randint(k + 1, 2 * k) for _ in range(k)),
                            reverse=True))
        chain = extension_cycle(ExtensionSpec(k, exts))
        assert not chain.is_zero
        assert boundary_of_chain(chain).is_zero
    return cases


def run_aus_bijection_family(rng, cases):
    """#AUS = #boundary divisor classes = #maximal quotient superstables."""
    for _ in range(cases):
        g = random_multigraph(rng, max_n=6)
        part = random_partition(rng, g)
        q = quotient(g, part)
        aus = enumerate_AUS(q, canonical_source_block(g, part))
        classes = boundary_divisor_classes(g, part)
        maximal = enumerate_maximal_superstables(q.multi,
                                                 canonical_sink(q.multi))
        assert len(aus) == len(classes) == len(maximal)
    return cases


def run_switch_agreement_family(rng, cases):
    """Switch BFS and the divisor-class test agree (checked inside
    orientations_equivalent, which raises on disagreement)."""
    for _ in range(cases):
        g = random_multigraph(rng, max_n=5)
        part = random_partition(rng, g)
        q = quotient(g, part)
        orientations = sorted(enumerate_acyclic_orientations(q), key=sorted)
        o1 = rng.choice(orientations)
        o2 = rng.choice(orientations)
        orientations_equivalent(g, part, o1, o2)
    return cases


def run_support_obstruction_family(rng, cases):
    """No member of a boundary divisor's linear system touches every block."""
    for _ in range(cases):
        g = random_multigraph(rng, max_n=5, max_mult=2, max_extra=1)
        part = random_partition(rng, g)
        q = quotient(g, part)
        aus = sorted(enumerate_AUS(q, canonical_source_block(g, part)),
                     key=sorted)
        D = f_map(g, part, rng.choice(aus))
        blocks = [frozenset(b) for b in part.blocks]
        for member in linear_system(g, D):
            supp = {g.vertices[i] for i, x in enumerate(member) if x}
            assert any(not (supp & b) for b in blocks)
    return cases


def run_superstable_count_family(rng, cases):
    """Superstable count is sink-independent and equals the tree count."""
    for _ in range(cases):
        g = random_multigraph(rng, max_n=6)
        trees = spanning_tree_count(g)
        from graphbetti.divisors import enumerate_superstables
        q = rng.choice(g.vertices)
        assert len(enumerate_superstables(g, q)) == trees
    return cases


# -- exhaustive corpus (criteria 7-8) -------------------------------------------


def small_corpus():
    """Every connected multigraph on 2..4 labeled vertices with total edge
    multiplicity at most 6."""
    graphs = []
    for n in (2, 3, 4):
        names = ["a", "b", "c", "d"][:n]
        pairs = [frozenset(p) for p in combinations(names, 2)]
        for mults in product(range(7), repeat=len(pairs)):
            total = sum(mults)
            if not n - 1 <= total <= 6:
                continue
            mapping = {p: m for p, m in zip(pairs, mults) if m}
            try:
                graphs.append(Multigraph(names, mapping))
            except GraphError:
                continue
    return graphs


def corpus_check(g: Multigraph) -> dict:
    """Wilmes comparison plus the top-layer aliveness equivalences for one
    corpus graph."""
    n = len(g)
    window = (0, g.edge_count())
    ks = list(range(1, n))
    totals = {k: 0 for k in ks}
    top_classes = set()
    alive_classes = set()
    for rep in class_scan_representatives(g, window):
        table = betti_table_for_rep(g, rep, ks)
        for k in ks:
            totals[k] += table[k]
        if table[n - 1] > 0:
            top_classes.add(class_key(g, rep))
        if is_minimally_alive(g, rep):
            alive_classes.add(class_key(g, rep))
    wilmes_ok = True
    for k in ks:
        rhs = 0
        for part in enumerate_connected_partitions(g, k + 1):
            gq = quotient(g, part).multi
            rhs += len(enumerate_maximal_superstables(gq,
                                                      canonical_sink(gq)))
        if totals[k] != rhs:
            wilmes_ok = False
    full = make_partition(g, [{v} for v in g.vertices])
    full_classes = set(boundary_divisor_classes(g, full))
    return {
        "wilmes_ok": wilmes_ok,
        "top_eq_alive": top_classes == alive_classes,
        "alive_eq_full_partition": alive_classes == full_classes,
    }
