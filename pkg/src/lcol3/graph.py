"""Immutable simple-graph core: dense integer vertices, bitset vertex sets,
constant-time edge queries, components and bipartiteness."""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass

# Above this vertex count the per-vertex bit rows would exceed the desk-scale
# memory cap (~2 MB), so the edge predicate falls back to binary search.
BITMATRIX_LIMIT = 4096


class GraphError(ValueError):
    """Malformed graph input."""


class LoopEdgeError(GraphError):
    def __init__(self, vertex):
        super().__init__(f"self-loop at vertex {vertex}")
        self.vertex = vertex


class DuplicateEdgeError(GraphError):
    def __init__(self, u, v):
        super().__init__(f"duplicate edge ({u}, {v})")
        self.edge = (u, v)


class VertexRangeError(GraphError):
    def __init__(self, vertex, n):
        super().__init__(f"vertex {vertex} out of range [0, {n})")
        self.vertex = vertex


def iter_bits(mask):
    """Yield set-bit positions of an int bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class VertexSet:
    """Immutable vertex subset backed by an int bitmask.

    Cardinality is the popcount of the mask; iteration is ascending.
    """

    __slots__ = ("mask",)

    def __init__(self, mask=0):
        self.mask = mask

    @classmethod
    def from_iterable(cls, vertices):
        m = 0
        for v in vertices:
            m |= 1 << v
        return cls(m)

    def __contains__(self, v):
        return (self.mask >> v) & 1 == 1

    def __iter__(self):
        return iter_bits(self.mask)

    def __len__(self):
        return self.mask.bit_count()

    def __bool__(self):
        return self.mask != 0

    def __eq__(self, other):
        return isinstance(other, VertexSet) and self.mask == other.mask

    def __hash__(self):
        return hash(self.mask)

    def __and__(self, other):
        return VertexSet(self.mask & other.mask)

    def __or__(self, other):
        return VertexSet(self.mask | other.mask)

    def __sub__(self, other):
        return VertexSet(self.mask & ~other.mask)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self.mask != other.mask and self.mask & ~other.mask == 0

    def min(self):
        if not self.mask:
            raise ValueError("empty vertex set")
        return (self.mask & -self.mask).bit_length() - 1

    def to_list(self):
        return list(self)

    def __repr__(self):
        return f"VertexSet({self.to_list()})"


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1.

    `adj` holds sorted neighbour tuples; for n <= BITMATRIX_LIMIT a per-vertex
    bit row backs O(1) edge queries, otherwise binary search is used. Safe to
    share across threads once built.
    """

    __slots__ = ("n", "m", "adj", "bits")

    def __init__(self, n, adj, bits, m):
        self.n = n
        self.adj = adj
        self.bits = bits
        self.m = m

    def has_edge(self, u, v):
        if u == v:
            return False
        if self.bits is not None:
            return (self.bits[u] >> v) & 1 == 1
        row = self.adj[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def neighbours(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    def edges(self):
        """All edges as (u, v) with u < v, lexicographically ascending."""
        for u in range(self.n):
            for v in self.adj[u]:
                if v > u:
                    yield (u, v)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n, edges):
    """Build a Graph from an edge list, rejecting loops and duplicates."""
    if n < 0:
        raise GraphError("negative vertex count")
    if n <= BITMATRIX_LIMIT:
        rows = [bytearray((n + 7) // 8) for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n):
                raise VertexRangeError(u, n)
            if not (0 <= v < n):
                raise VertexRangeError(v, n)
            if u == v:
                raise LoopEdgeError(u)
            if rows[u][v >> 3] >> (v & 7) & 1:
                raise DuplicateEdgeError(u, v)
            rows[u][v >> 3] |= 1 << (v & 7)
            rows[v][u >> 3] |= 1 << (u & 7)
            m += 1
        bits = [int.from_bytes(row, "little") for row in rows]
        adj = [tuple(iter_bits(b)) for b in bits]
        return Graph(n, adj, bits, m)

    adj_lists = [[] for _ in range(n)]
    seen = set()
    m = 0
    for u, v in edges:
        if not (0 <= u < n):
            raise VertexRangeError(u, n)
        if not (0 <= v < n):
            raise VertexRangeError(v, n)
        if u == v:
            raise LoopEdgeError(u)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(u, v)
        seen.add(key)
        adj_lists[u].append(v)
        adj_lists[v].append(u)
        m += 1
    adj = [tuple(sorted(row)) for row in adj_lists]
    return Graph(n, adj, None, m)


def adjacency_masks(graph):
    """Per-vertex neighbour bitmasks; built on demand above BITMATRIX_LIMIT."""
    if graph.bits is not None:
        return graph.bits
    return [VertexSet.from_iterable(graph.adj[v]).mask for v in range(graph.n)]


def adjacency_query(graph, u, v):
    """Symmetric edge predicate; vertices must be in range."""
    if not (0 <= u < graph.n):
        raise VertexRangeError(u, graph.n)
    if not (0 <= v < graph.n):
        raise VertexRangeError(v, graph.n)
    return graph.has_edge(u, v)


def connected_components(graph):
    """Partition of the vertices into components, ordered by smallest member."""
    seen = bytearray(graph.n)
    out = []
    for root in range(graph.n):
        if seen[root]:
            continue
        seen[root] = 1
        comp = 1 << root
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in graph.adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    comp |= 1 << y
                    queue.append(y)
        out.append(VertexSet(comp))
    return out


@dataclass(frozen=True)
class Bipartition:
    """Two stable sides covering all vertices; every edge crosses them."""

    a: VertexSet
    b: VertexSet


def bipartite_check(graph):
    """Return a Bipartition, or an odd cycle (vertex list) if none exists.

    The cycle has odd length with consecutive vertices adjacent; it is not
    necessarily shortest or induced.
    """
    side = [-1] * graph.n
    parent = [-1] * graph.n
    for root in range(graph.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in graph.adj[x]:
                if side[y] == -1:
                    side[y] = side[x] ^ 1
                    parent[y] = x
                    queue.append(y)
                elif side[y] == side[x]:
                    return _odd_cycle_from_conflict(parent, x, y)
    a = 0
    b = 0
    for v in range(graph.n):
        if side[v] == 0:
            a |= 1 << v
        else:
            b |= 1 << v
    return Bipartition(VertexSet(a), VertexSet(b))


def _odd_cycle_from_conflict(parent, u, v):
    # u and v are adjacent and sit at equal BFS parity; walking both parent
    # chains to their first common ancestor closes an odd cycle.
    path_u = [u]
    while parent[path_u[-1]] != -1:
        path_u.append(parent[path_u[-1]])
    pos_u = {x: i for i, x in enumerate(path_u)}
    path_v = [v]
    while path_v[-1] not in pos_u:
        path_v.append(parent[path_v[-1]])
    lca = path_v[-1]
    cycle = path_u[: pos_u[lca] + 1] + path_v[-2::-1]
    assert len(cycle) % 2 == 1
    return cycle


def induced_subgraph(graph, vertices):
    """Induced subgraph plus the sorted original ids of its vertices."""
    if isinstance(vertices, VertexSet):
        old_ids = vertices.to_list()
    else:
        old_ids = sorted(vertices)
    index = {old: new for new, old in enumerate(old_ids)}
    edges = []
    for new_u, old_u in enumerate(old_ids):
        for old_v in graph.adj[old_u]:
            new_v = index.get(old_v)
            if new_v is not None and new_v > new_u:
                edges.append((new_u, new_v))
    return build_graph(len(old_ids), edges), old_ids
