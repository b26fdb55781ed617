"""Seeded randomized property suites (each family >= 200 cases)."""

import random

from helpers import (run_aus_bijection_family, run_extension_cycle_family,
                     run_superstable_count_family,
                     run_support_obstruction_family,
                     run_switch_agreement_family)

SEED = 20240817
CASES = 200


def test_extension_cycle_boundaries_vanish():
    assert run_extension_cycle_family(random.Random(SEED), CASES) == CASES


def test_aus_bijection_counts():
    assert run_aus_bijection_family(random.Random(SEED + 1), CASES) == CASES


def test_switch_equivalence_agreement():
    assert run_switch_agreement_family(random.Random(SEED + 2), CASES) == CASES


def test_support_obstruction():
    assert run_support_obstruction_family(
        random.Random(SEED + 3), CASES) == CASES


def test_superstable_count_matches_matrix_tree():
    assert run_superstable_count_family(
        random.Random(SEED + 4), CASES) == CASES


def test_reachable_set_pump():
    # firing the closure of the reachable set of a non-unique-source acyclic
    # orientation keeps the image divisor effective and moves it to the
    # image of the switched orientation
    from graphbetti.divisors import apply_script
    from graphbetti.orientations import (enumerate_acyclic_orientations,
                                         f_map, is_critical, reachable_from,
                                         sources, switch)
    from graphbetti.partitions import quotient
    from helpers import random_multigraph, random_partition

    rng = random.Random(SEED + 5)
    for _ in range(CASES):
        g = random_multigraph(rng, max_n=5)
        part = random_partition(rng, g)
        q = quotient(g, part)
        orientations = sorted(enumerate_acyclic_orientations(q), key=sorted)
        o = rng.choice(orientations)
        srcs = sources(q, o)
        if len(srcs) < 2:
            continue
        u = sorted(srcs)[1]
        R = reachable_from(q, o, u)
        if not is_critical(q, o, R):
            continue
        flipped = switch(q, o, R)
        blocks = frozenset().union(*(q.block_by_label[l] for l in R))
        sigma = tuple(1 if v in blocks else 0 for v in g.vertices)
        image = apply_script(g, f_map(g, part, o), sigma)
        assert image == f_map(g, part, flipped)
        assert all(x >= 0 for x in image)
