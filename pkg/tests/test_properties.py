"""Differential properties on instance families independent of the seeded
generators: false-twin expansions and filtered random graphs.

Adding a false twin preserves both triangle-freeness and induced-path
freeness (an induced path can use at most one member of a twin class, so it
projects to the base graph), which turns any small promise instance into a
whole family of denser ones.
"""

import random

from lcol3 import build_graph, check_promise, solve, verify_colouring
from lcol3.testkit import GenSpec, generate, oracle_solve


def twin_expand(graph, rng, extra):
    adj = {v: set(graph.adj[v]) for v in range(graph.n)}
    for _ in range(extra):
        v = rng.randrange(len(adj))
        twin = len(adj)
        adj[twin] = set(adj[v])
        for u in adj[v]:
            adj[u].add(twin)
    edges = [(u, v) for u in adj for v in adj[u] if u < v]
    return build_graph(len(adj), edges)


def random_masks(rng, n):
    out = []
    for _ in range(n):
        roll = rng.random()
        if roll < 0.4:
            out.append(0b111)
        elif roll < 0.8:
            out.append(0b111 & ~(1 << rng.randrange(3)))
        else:
            out.append(1 << rng.randrange(3))
    return out


def test_twin_expansions_stay_in_class_and_match_oracle():
    checked = 0
    for seed in range(150):
        rng = random.Random(seed * 37 + 1)
        base, _ = generate(GenSpec("random_rejection", seed=seed,
                                   n=rng.randint(5, 10),
                                   target_edges=rng.randint(4, 12)))
        expanded = twin_expand(base, rng, rng.randint(1, 8))
        assert check_promise(expanded) is None, seed
        masks = random_masks(rng, expanded.n)
        outcome = solve(expanded, masks, mode="verify")
        assert not outcome.is_invalid
        expected = oracle_solve(expanded, masks)
        assert outcome.is_sat == (expected is not None), seed
        if outcome.is_sat:
            assert verify_colouring(expanded, masks, outcome.colouring)
        checked += 1
    assert checked == 150


def test_filtered_random_graphs_match_oracle():
    # arbitrary promise members found by rejection over G(n, m), without any
    # of the generators' structural bias
    accepted = 0
    tried = 0
    seed = 0
    while accepted < 120 and tried < 6000:
        seed += 1
        tried += 1
        rng = random.Random(seed * 101 + 7)
        n = rng.randint(5, 11)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        m = rng.randint(n - 2, min(len(pairs), 2 * n))
        g = build_graph(n, rng.sample(pairs, m))
        if check_promise(g) is not None:
            continue
        accepted += 1
        masks = random_masks(rng, n)
        outcome = solve(g, masks)
        expected = oracle_solve(g, masks)
        assert outcome.is_sat == (expected is not None), seed
        if outcome.is_sat:
            assert verify_colouring(g, masks, outcome.colouring)
    assert accepted >= 100


def test_twin_expanded_blowups_solve_at_parallel_settings():
    for seed in range(25):
        rng = random.Random(seed + 5000)
        base, _ = generate(GenSpec("skeleton_built", seed=seed, scale=18))
        expanded = twin_expand(base, rng, rng.randint(1, 6))
        assert check_promise(expanded) is None
        masks = random_masks(rng, expanded.n)
        a = solve(expanded, masks, parallel=1)
        b = solve(expanded, masks, parallel=3)
        assert a.kind == b.kind and a.colouring == b.colouring
