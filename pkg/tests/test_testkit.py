import random

import pytest

from lcol3 import build_graph, check_promise, solve, verify_colouring
from lcol3.engine import FULL_MASK, mask_of
from lcol3.testkit import (GenSpec, RejectionBudgetExceeded, SizeGuardError,
                           cycle_graph, enumerate_colourings, generate,
                           groetzsch_graph, mycielski, oracle_solve,
                           path_graph, petersen_graph)


def test_oracle_c5_full():
    g = cycle_graph(5)
    got = oracle_solve(g)
    assert got is not None and verify_colouring(g, None, got)


def test_oracle_c5_restricted_unsat():
    assert oracle_solve(cycle_graph(5), [mask_of([1, 2])] * 5) is None


def test_oracle_empty_graph():
    assert oracle_solve(build_graph(0, [])) == []


def test_oracle_matches_engine_on_mixed_instances():
    for seed in range(60):
        g, masks = generate(GenSpec("skeleton_built", seed=seed, scale=30,
                                    lists="random"))
        assert (oracle_solve(g, masks) is not None) == solve(g, masks).is_sat


def test_oracle_relabelling_invariance():
    rng = random.Random(17)
    for seed in range(20):
        g, masks = generate(GenSpec("skeleton_built", seed=seed, scale=18,
                                    lists="random"))
        perm = list(range(g.n))
        rng.shuffle(perm)
        edges = [(perm[u], perm[v]) for u, v in g.edges()]
        g2 = build_graph(g.n, edges)
        masks2 = [0] * g.n
        for v in range(g.n):
            masks2[perm[v]] = masks[v]
        assert (oracle_solve(g, masks) is None) == (oracle_solve(g2, masks2) is None)


def test_enumerate_k2_full():
    assert len(list(enumerate_colourings(build_graph(2, [(0, 1)])))) == 6


def test_enumerate_c5_full():
    assert len(list(enumerate_colourings(cycle_graph(5)))) == 30


def test_enumerate_single_vertex_forced():
    got = list(enumerate_colourings(build_graph(1, []), [mask_of([2])]))
    assert got == [(2,)]


def test_enumerate_counts_match_chromatic_polynomial():
    for n in range(3, 9):
        paths = len(list(enumerate_colourings(path_graph(n))))
        assert paths == 3 * 2 ** (n - 1)
        cycles = len(list(enumerate_colourings(cycle_graph(n))))
        assert cycles == 2 ** n + 2 * (-1) ** n


def test_enumerate_size_guard():
    with pytest.raises(SizeGuardError):
        list(enumerate_colourings(path_graph(17)))


def test_generators_always_pass_promise_check():
    kinds = ["blownup_c5", "blownup_c7", "skeleton_built", "random_rejection"]
    for seed in range(40):
        spec = GenSpec(kinds[seed % 4], seed=seed, scale=25, n=9, target_edges=10)
        g, masks = generate(spec)
        assert check_promise(g) is None, (spec,)
        assert len(masks) == g.n


def test_generation_reproducible():
    spec = GenSpec("skeleton_built", seed=99, scale=30, lists="random")
    g1, m1 = generate(spec)
    g2, m2 = generate(spec)
    assert list(g1.edges()) == list(g2.edges()) and m1 == m2


def test_blownup_c5_structure():
    g, _ = generate(GenSpec("blownup_c5", class_sizes=(2, 2, 2, 2, 2)))
    assert g.n == 10 and g.m == 5 * 4
    assert solve(g).is_sat


def test_blownup_c7_doubled():
    g, _ = generate(GenSpec("blownup_c7", class_sizes=(2,) * 7))
    assert g.n == 14
    assert check_promise(g) is None


def test_type2_w_pattern_reachable():
    # some seed yields a W vertex adjacent to two non-consecutive D sets
    from lcol3.graph import Bipartition, bipartite_check
    from lcol3.recognition import shortest_odd_cycle
    from lcol3.skeleton import Skeleton, build_skeleton

    found = False
    for seed in range(400):
        g, _ = generate(GenSpec("skeleton_built", seed=seed, scale=25))
        if isinstance(bipartite_check(g), Bipartition):
            continue
        cyc = shortest_odd_cycle(g)
        if len(cyc) != 5:
            continue
        sk = build_skeleton(g, cyc)
        if not isinstance(sk, Skeleton):
            continue
        for w in sk.w:
            hit = {i for i in range(5)
                   if any(g.has_edge(w, d) for d in sk.d[i])}
            if len(hit) == 2:
                found = True
                break
        if found:
            break
    assert found


def test_rejection_budget_exceeded():
    # a 40-vertex near-tree almost surely holds an induced P7
    with pytest.raises(RejectionBudgetExceeded):
        generate(GenSpec("random_rejection", seed=1, n=40, target_edges=39,
                         rejection_budget=3))


def test_named_graphs():
    assert petersen_graph().m == 15
    g = groetzsch_graph()
    assert g.n == 11 and g.m == 20
    assert mycielski(path_graph(2)).n == 5
