"""Structure recognition: triangles, induced 7-vertex paths, shortest odd
cycles, false-twin classes, and the blown-up-C7 decomposition.

Every triangle / induced-path witness emitted from here is verified against
the graph before it is returned; when a contradiction cannot be turned into a
checkable witness the violation is reported as a structure breach instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import VertexSet, adjacency_masks, iter_bits

TRIANGLE = "triangle"
INDUCED_P7 = "induced_p7"
STRUCTURE_BREACH = "structure_breach"


@dataclass(frozen=True)
class PromiseViolation:
    """Witness that the input graph is outside the promise class.

    kind is one of "triangle" (3 mutually adjacent vertices), "induced_p7"
    (7 vertices inducing a path, in path order) or "structure_breach" (a
    structural check failed without a directly constructible witness; the
    note names the failed condition).
    """

    kind: str
    vertices: tuple
    note: str = ""

    def relabel(self, mapping):
        return PromiseViolation(self.kind, tuple(mapping[v] for v in self.vertices), self.note)


@dataclass(frozen=True)
class TwinDecomposition:
    """Partition of a C5-free graph into the seven stable classes of a
    blown-up C7, cyclically ordered; representatives lie on the base cycle."""

    classes: tuple
    representatives: tuple


def is_triangle(graph, vertices):
    a, b, c = vertices
    if len({a, b, c}) != 3:
        return False
    return graph.has_edge(a, b) and graph.has_edge(b, c) and graph.has_edge(a, c)


def is_induced_path(graph, vertices):
    """True iff the vertices, in the given order, induce a path."""
    k = len(vertices)
    if len(set(vertices)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = graph.has_edge(vertices[i], vertices[j])
            if adjacent != (j == i + 1):
                return False
    return True


def triangle_witness(graph, a, b, c, note=""):
    if is_triangle(graph, (a, b, c)):
        return PromiseViolation(TRIANGLE, tuple(sorted((a, b, c))))
    return PromiseViolation(STRUCTURE_BREACH, tuple(sorted((a, b, c))),
                            note or "expected triangle did not verify")


def p7_witness(graph, vertices, note=""):
    vertices = tuple(vertices)
    if len(vertices) == 7 and is_induced_path(graph, vertices):
        return PromiseViolation(INDUCED_P7, vertices)
    return PromiseViolation(STRUCTURE_BREACH, vertices,
                            note or "expected induced P7 did not verify")


def find_triangle(graph):
    """First triangle in edge order, or None if the graph is triangle-free."""
    bits = adjacency_masks(graph)
    for u in range(graph.n):
        row_u = bits[u]
        for v in graph.adj[u]:
            if v <= u:
                continue
            common = row_u & bits[v]
            if common:
                w = (common & -common).bit_length() - 1
                return tuple(sorted((u, v, w)))
    return None


def find_induced_p7(graph):
    """An induced 7-vertex path in path order, or None.

    Depth-first extension of induced paths with adjacency-mask pruning; a
    candidate must be adjacent to the path's last vertex and to no earlier
    one.  Worst case superpolynomial, which is acceptable since this runs
    only in strict verification and test tooling, never on the solving path.
    """
    n = graph.n
    if n < 7:
        return None
    bits = adjacency_masks(graph)
    full = (1 << n) - 1

    path = []
    # blocked[d] = vertices adjacent to path[:d] or on the path itself
    def extend(v, blocked):
        path.append(v)
        if len(path) == 7:
            return True
        new_blocked = blocked | bits[v] | (1 << v)
        cand = bits[v] & full & ~blocked & ~(1 << v)
        for w in iter_bits(cand):
            if extend(w, new_blocked):
                return True
        path.pop()
        return False

    for start in range(n):
        if extend(start, 1 << start):
            return tuple(path)
    return None


def shortest_odd_cycle(graph):
    """A minimum-length odd cycle (vertex list), or None if bipartite.

    BFS from every vertex with parity-labelled levels: an edge inside one BFS
    level at depth d closes an odd walk of length 2d+1 through the root, and
    the minimum over all roots is attained by a simple chordless cycle.
    Deterministic: roots ascending, strict improvements only, and within the
    winning root the lexicographically first same-level edge.
    """
    n = graph.n
    bits = adjacency_masks(graph)
    full = (1 << n) - 1

    best_len = None
    best = None  # (root, edge endpoint a, endpoint b, depth)
    for s in range(n):
        if best_len is not None:
            # Only strictly shorter walks matter now.
            dmax = (best_len - 3) // 2
            if dmax < 1:
                break
        else:
            dmax = n
        seen = 1 << s
        level = 1 << s
        d = 0
        while level and d < dmax:
            d += 1
            nxt = 0
            for u in iter_bits(level):
                nxt |= bits[u]
            nxt &= full & ~seen
            level = nxt
            seen |= nxt
            if not level:
                break
            hit = None
            for a in iter_bits(level):
                higher = bits[a] & level & ~((1 << (a + 1)) - 1)
                if higher:
                    b = (higher & -higher).bit_length() - 1
                    hit = (a, b)
                    break
            if hit is not None:
                best_len = 2 * d + 1
                best = (s, hit[0], hit[1], d)
                break
    if best is None:
        return None
    return _extract_odd_cycle(graph, *best)


def _extract_odd_cycle(graph, s, a, b, depth):
    parent = [-1] * graph.n
    dist = [-1] * graph.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if dist[x] >= depth:
            continue
        for y in graph.adj[x]:
            if dist[y] == -1:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)

    def chain(v):
        out = [v]
        while parent[out[-1]] != -1:
            out.append(parent[out[-1]])
        return out

    up_a = chain(a)  # a .. s
    up_b = chain(b)  # b .. s
    cycle = up_a[::-1] + up_b[:-1]  # s .. a, b .. (below s)
    # At the global minimum the two parent chains share only the root.
    assert len(cycle) == 2 * depth + 1 and len(set(cycle)) == len(cycle)
    return cycle


def false_twin_classes(graph):
    """Partition of the vertices into classes of equal neighbourhood."""
    bits = adjacency_masks(graph)
    groups = {}
    for v in range(graph.n):
        groups.setdefault(bits[v], []).append(v)
    classes = [VertexSet.from_iterable(vs) for vs in groups.values()]
    classes.sort(key=lambda c: c.min())
    return classes


def check_promise(graph):
    """None if the graph is triangle-free and P7-free, else a verified witness."""
    tri = find_triangle(graph)
    if tri is not None:
        return triangle_witness(graph, *tri)
    p7 = find_induced_p7(graph)
    if p7 is not None:
        return p7_witness(graph, p7)
    return None


def recognize_blownup_c7(graph, c7):
    """Classify every vertex against an induced 7-cycle of a connected,
    C5-free graph, returning the twin classes or a violation.

    Off-cycle vertices must see exactly two cycle vertices at distance two;
    the classes must be stable, completely adjacent consecutively and
    anticomplete otherwise.  A vertex pattern implying a C5 contradicts the
    odd-girth-7 precondition and is reported as a structure breach.
    """
    n = graph.n
    c7 = tuple(c7)
    pos = {v: i for i, v in enumerate(c7)}
    class_members = [[c7[i]] for i in range(7)]

    for v in range(n):
        if v in pos:
            continue
        hits = sorted(pos[u] for u in graph.adj[v] if u in pos)
        if not hits:
            continue  # coverage handled after classification
        for idx in range(len(hits)):
            i, j = hits[idx], hits[(idx + 1) % len(hits)]
            if (j - i) % 7 == 1 or (i - j) % 7 == 1:
                lo = i if (j - i) % 7 == 1 else j
                return triangle_witness(graph, v, c7[lo], c7[(lo + 1) % 7])
        if len(hits) == 1:
            i = hits[0]
            path = (v,) + tuple(c7[(i + k) % 7] for k in range(6))
            return p7_witness(graph, path, "single cycle neighbour")
        dist2 = None
        for i in hits:
            for j in hits:
                if (j - i) % 7 == 3:
                    return PromiseViolation(
                        STRUCTURE_BREACH, (v, c7[i], c7[j]),
                        "cycle neighbours at distance 3 imply a C5, "
                        "contradicting odd girth 7")
                if (j - i) % 7 == 2:
                    dist2 = (i, j)
        if len(hits) != 2 or dist2 is None:
            return PromiseViolation(STRUCTURE_BREACH, (v,) + tuple(c7[i] for i in hits),
                                    "unclassifiable neighbourhood pattern on C7")
        class_members[(dist2[0] + 1) % 7].append(v)

    classes = [VertexSet.from_iterable(ms) for ms in class_members]
    covered = 0
    for cl in classes:
        covered |= cl.mask
    if covered != (1 << n) - 1:
        return _uncovered_witness(graph, c7, classes, covered)

    bits = adjacency_masks(graph)
    for i in range(7):
        # stability: two class members sharing the next cycle vertex
        for v in classes[i]:
            inside = bits[v] & classes[i].mask
            if inside:
                u = (inside & -inside).bit_length() - 1
                return triangle_witness(graph, v, u, c7[(i + 1) % 7])
        nxt = classes[(i + 1) % 7]
        for v in classes[i]:
            missing = nxt.mask & ~bits[v]
            if missing:
                u = (missing & -missing).bit_length() - 1
                path = (u, c7[(i + 2) % 7], c7[(i + 3) % 7], c7[(i + 4) % 7],
                        c7[(i + 5) % 7], c7[(i + 6) % 7], v)
                return p7_witness(graph, path, "missing consecutive-class edge")
        for j in range(7):
            if j in ((i + 1) % 7, (i - 1) % 7, i):
                continue
            for v in classes[i]:
                cross = bits[v] & classes[j].mask
                if cross:
                    u = (cross & -cross).bit_length() - 1
                    if (j - i) % 7 in (2, 5):
                        mid = (i + 1) % 7 if (j - i) % 7 == 2 else (j + 1) % 7
                        return triangle_witness(graph, v, u, c7[mid])
                    return PromiseViolation(
                        STRUCTURE_BREACH, (v, u),
                        "distance-3 class edge implies a C5, "
                        "contradicting odd girth 7")
    return TwinDecomposition(tuple(classes), c7)


def _uncovered_witness(graph, c7, classes, covered):
    # Some vertex has no cycle neighbour; a shortest connection into the
    # cycle through a classified vertex yields an induced P7.
    class_of = {}
    for i, cl in enumerate(classes):
        for v in cl:
            class_of[v] = i
    for x in range(graph.n):
        if (covered >> x) & 1:
            continue
        for y in graph.adj[x]:
            j = class_of.get(y)
            if j is not None:
                path = (x, y) + tuple(c7[(j + 1 + k) % 7] for k in range(5))
                return p7_witness(graph, path, "vertex beyond distance 1 from C7")
    return PromiseViolation(STRUCTURE_BREACH, tuple(iter_bits(~covered & ((1 << graph.n) - 1))),
                            "vertices unreachable from the 7-cycle classes")
