"""Shared test helpers: independent witness checkers and graph strategies."""

from itertools import combinations

from hypothesis import strategies as st

from lcol3 import build_graph


def brute_triangle_free(graph):
    return all(
        not (graph.has_edge(a, b) and graph.has_edge(b, c) and graph.has_edge(a, c))
        for a, b, c in combinations(range(graph.n), 3))


def subset_induces_path(graph, subset):
    """Independent path test on a vertex subset: right edge count, degree
    multiset of a path, and connectivity."""
    subset = list(subset)
    k = len(subset)
    edges = [(u, v) for u, v in combinations(subset, 2) if graph.has_edge(u, v)]
    if len(edges) != k - 1:
        return False
    deg = {v: 0 for v in subset}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if sorted(deg.values()) != [1, 1] + [2] * (k - 2):
        return False
    seen = {subset[0]}
    frontier = [subset[0]]
    while frontier:
        x = frontier.pop()
        for u, v in edges:
            for a, b in ((u, v), (v, u)):
                if a == x and b not in seen:
                    seen.add(b)
                    frontier.append(b)
    return len(seen) == k


def brute_has_induced_p7(graph):
    return any(subset_induces_path(graph, s)
               for s in combinations(range(graph.n), 7))


def check_witness(graph, violation):
    """Independent verification of an emitted promise-violation witness."""
    vs = violation.vertices
    if violation.kind == "triangle":
        a, b, c = vs
        return (graph.has_edge(a, b) and graph.has_edge(b, c)
                and graph.has_edge(a, c))
    if violation.kind == "induced_p7":
        if len(vs) != 7 or len(set(vs)) != 7:
            return False
        for i in range(7):
            for j in range(i + 1, 7):
                if graph.has_edge(vs[i], vs[j]) != (j == i + 1):
                    return False
        return True
    return False


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return build_graph(n, chosen)
