"""Acceptance suite: one criterion per test, one PASS/FAIL line each."""

import json
import random
import time
from multiprocessing import get_context

import pytest

from graphbetti.cycles import (boundary_of_chain, tree_witness_cycle,
                               witness_certifies_nonzero_homology)
from graphbetti.divisors import parse_divisor
from graphbetti.homology import (betti_kD, coarse_betti, cut_from_splitting,
                                 splittings)
from graphbetti.multigraph import load_graph
from graphbetti.orientations import (boundary_divisor_classes,
                                     canonical_source_block, enumerate_AUS,
                                     f_map)
from graphbetti.partitions import (enumerate_connected_partitions,
                                   parse_partition, partition_to_string,
                                   quotient)
from helpers import (corpus_check, example_graph, run_aus_bijection_family,
                     run_extension_cycle_family, run_superstable_count_family,
                     run_support_obstruction_family,
                     run_switch_agreement_family, small_corpus, tree_graph)


def report(number, ok, detail):
    print("ACCEPTANCE %d: %s - %s" % (number, "PASS" if ok else "FAIL",
                                      detail))
    assert ok, "criterion %d: %s" % (number, detail)


def test_criterion_1_coarse_beta1():
    g = example_graph()
    start = time.monotonic()
    value = coarse_betti(g, [1], (0, g.edge_count())).coarse_value(1)
    elapsed = time.monotonic() - start
    report(1, value == 6 and elapsed < 10.0,
           "coarse beta_1 = %d (expected 6) in %.2fs single-threaded"
           % (value, elapsed))


def test_criterion_2_six_cuts():
    g = example_graph()
    cuts = sorted(enumerate_connected_partitions(g, 2),
                  key=lambda p: partition_to_string(g, p))
    expected = {"{a}|{b,c,d}", "{a,b,c}|{d}", "{a,b,d}|{c}", "{a,c,d}|{b}",
                "{a,b}|{c,d}", "{a,c}|{b,d}"}
    names_ok = {partition_to_string(g, c) for c in cuts} == expected
    keys = []
    betti_ok = True
    for cut in cuts:
        (key,) = boundary_divisor_classes(g, cut)
        keys.append(key)
        betti_ok = betti_ok and betti_kD(g, key.reduced, 1) == 1
    distinct_ok = len(set(keys)) == 6
    report(2, names_ok and distinct_ok and betti_ok,
           "6 cuts enumerated=%s, classes pairwise distinct=%s, "
           "beta_1,D = 1 each=%s" % (names_ok, distinct_ok, betti_ok))


def test_criterion_3_linear_system_and_cut_recovery():
    from graphbetti.divisors import linear_system
    g = example_graph()
    D = parse_divisor(g, "0004")
    members_ok = linear_system(g, D) == {
        parse_divisor(g, "0004"), parse_divisor(g, "2020"),
        parse_divisor(g, "0130")}
    splits = splittings(g, D)
    split_ok = splits == frozenset({frozenset({
        frozenset({parse_divisor(g, "0004")}),
        frozenset({parse_divisor(g, "2020"),
                   parse_divisor(g, "0130")})})})
    cut, _ = cut_from_splitting(g, D, next(iter(splits)))
    cut_ok = partition_to_string(g, cut) == "{a,b,c}|{d}"
    report(3, members_ok and split_ok and cut_ok,
           "|0004|={0004,2020,0130}=%s, single splitting=%s, "
           "recovered cut {a,b,c}|{d}=%s" % (members_ok, split_ok, cut_ok))


def test_criterion_4_f_map_and_aus():
    from graphbetti.divisors import divisor_to_string
    g = example_graph()
    part = parse_partition(g, "{a}|{b,d}|{c}")
    q = quotient(g, part)
    aus = enumerate_AUS(q, canonical_source_block(g, part))
    images = {divisor_to_string(g, f_map(g, part, o)) for o in aus}
    values_ok = images == {"0313", "0160"}
    classes = boundary_divisor_classes(g, part)
    report(4, values_ok and len(aus) == 2 and len(classes) == 2,
           "f images {0313,0160}=%s, #AUS=%d (expected 2), #classes=%d "
           "(expected 2)" % (values_ok, len(aus), len(classes)))


def test_criterion_5_tree_witness():
    g = tree_graph()
    part = parse_partition(g, "{1}|{2,3}|{4}|{5}|{6}")
    D = parse_divisor(g, "1=0,2=1,3=0,4=1,5=1,6=1")
    chain = tree_witness_cycle(g, part, D)
    faces = {tuple(g.vertices[i] for i in face) for face in chain.faces()}
    expected = {
        ("2", "4", "5", "6"),
        ("2", "3", "4", "5"), ("2", "3", "4", "6"),
        ("1", "2", "5", "6"), ("1", "4", "5", "6"),
        ("1", "2", "3", "5"), ("1", "3", "4", "5"),
        ("1", "2", "3", "6"), ("1", "3", "4", "6")}
    faces_ok = faces == expected and len(chain) == 9
    cycle_ok = boundary_of_chain(chain).is_zero
    certified = witness_certifies_nonzero_homology(g, D, chain)
    betti_ok = betti_kD(g, D, 4) >= 1
    report(5, faces_ok and cycle_ok and certified and betti_ok,
           "exact 9-face cycle=%s, boundary zero=%s, non-boundary "
           "certificate=%s, beta_4,D >= 1=%s"
           % (faces_ok, cycle_ok, certified, betti_ok))


def test_criterion_6_property_suites():
    seed = 20240817
    cases = 200
    start = time.monotonic()
    counts = [
        run_extension_cycle_family(random.Random(seed), cases),
        run_aus_bijection_family(random.Random(seed + 1), cases),
        run_switch_agreement_family(random.Random(seed + 2), cases),
        run_support_obstruction_family(random.Random(seed + 3), cases),
        run_superstable_count_family(random.Random(seed + 4), cases),
    ]
    elapsed = time.monotonic() - start
    report(6, all(c == cases for c in counts) and elapsed < 300.0,
           "5 property families x %d seeded cases in %.1fs (< 300s)"
           % (cases, elapsed))


@pytest.fixture(scope="module")
def corpus_results():
    graphs = small_corpus()
    assert len(graphs) == 653  # connected, n<=4, total multiplicity <= 6
    start = time.monotonic()
    with get_context("fork").Pool(processes=4) as pool:
        results = pool.map(corpus_check, graphs)
    elapsed = time.monotonic() - start
    return results, elapsed


def test_criterion_7_exhaustive_conjecture(corpus_results):
    results, elapsed = corpus_results
    failures = sum(1 for r in results if not r["wilmes_ok"])
    report(7, failures == 0 and elapsed < 900.0,
           "conjecture holds on all %d corpus graphs for every k "
           "(%d mismatches) in %.1fs with 4 workers (< 900s)"
           % (len(results), failures, elapsed))


def test_criterion_8_minimally_alive(corpus_results):
    results, _ = corpus_results
    top_failures = sum(1 for r in results if not r["top_eq_alive"])
    full_failures = sum(1 for r in results
                        if not r["alive_eq_full_partition"])
    report(8, top_failures == 0 and full_failures == 0,
           "beta_{n-1,D}>0 iff minimally alive on all %d graphs "
           "(%d failures); full-partition boundary classes = minimally "
           "alive classes (%d failures)"
           % (len(results), top_failures, full_failures))
