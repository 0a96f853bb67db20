"""Test tooling: a brute-force list-colouring oracle, exhaustive colouring
enumeration, seeded instance generators for the promise class, and a few
named graphs."""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass

from .engine import FULL_MASK, colours_of, normalize_lists, verify_colouring
from .graph import build_graph
from .recognition import check_promise, find_induced_p7

_SIZE = [0, 1, 1, 2, 1, 2, 2, 3]


class SizeGuardError(ValueError):
    pass


class RejectionBudgetExceeded(RuntimeError):
    pass


class GenerationError(RuntimeError):
    """A constructive generator produced a non-promise graph (recipe bug)."""


@dataclass(frozen=True)
class GenSpec:
    """Reproducible instance request; identical specs generate identical
    graphs and lists bit for bit."""

    kind: str  # blownup_c5 | blownup_c7 | skeleton_built | random_rejection
    seed: int = 0
    class_sizes: tuple | None = None
    n: int | None = None
    target_edges: int | None = None
    scale: int = 20
    lists: str = "full"  # "full" | "random"
    rejection_budget: int = 10_000


def oracle_solve(graph, lists=None):
    """Backtracking list-colouring oracle: most-constrained vertex first with
    forward pruning.  Returns a verified colouring or None."""
    masks = normalize_lists(graph.n, lists)
    n = graph.n
    if n == 0:
        return []
    adj = graph.adj
    work = list(masks)
    colouring = [0] * n
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 3 * n + 200))

    def pick():
        best = None
        best_size = 4
        for v in range(n):
            if colouring[v] == 0:
                s = _SIZE[work[v]]
                if s < best_size:
                    best, best_size = v, s
                    if s == 1:
                        break
        return best

    def rec():
        v = pick()
        if v is None:
            return True
        for c in colours_of(work[v]):
            cbit = 1 << (c - 1)
            colouring[v] = c
            touched = []
            dead = False
            for u in adj[v]:
                if colouring[u] == 0 and work[u] & cbit:
                    work[u] &= ~cbit
                    touched.append(u)
                    if work[u] == 0:
                        dead = True
                        break
            if not dead and rec():
                return True
            for u in touched:
                work[u] |= cbit
        colouring[v] = 0
        return False

    try:
        found = rec()
    finally:
        sys.setrecursionlimit(old_limit)
    if not found:
        return None
    assert verify_colouring(graph, masks, colouring)
    return colouring


def enumerate_colourings(graph, lists=None):
    """Yield every proper list-colouring as a colour tuple, vertices in id
    order, colours ascending; guarded to 16 vertices."""
    if graph.n > 16:
        raise SizeGuardError(f"enumeration limited to 16 vertices, got {graph.n}")
    masks = normalize_lists(graph.n, lists)
    n = graph.n
    adj = graph.adj
    colouring = [0] * n

    def rec(v):
        if v == n:
            yield tuple(colouring)
            return
        for c in colours_of(masks[v]):
            if any(colouring[u] == c for u in adj[v] if u < v):
                continue
            colouring[v] = c
            yield from rec(v + 1)
        colouring[v] = 0

    yield from rec(0)


# ---------------------------------------------------------------------------
# named graphs


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def mycielski(graph):
    """Mycielski construction: raises the chromatic number while keeping the
    graph triangle-free."""
    n = graph.n
    edges = list(graph.edges())
    for u, v in graph.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    for i in range(n):
        edges.append((n + i, 2 * n))
    return build_graph(2 * n + 1, edges)


def groetzsch_graph():
    return mycielski(cycle_graph(5))


# ---------------------------------------------------------------------------
# generators


def generate(spec):
    """Build the requested instance; returns (graph, colour masks).

    Constructive kinds always land in the promise class (validated);
    random_rejection resamples until the induced-P7 test passes or the
    attempt budget runs out.
    """
    rng = random.Random(spec.seed)
    if spec.kind == "blownup_c5":
        sizes = spec.class_sizes or tuple(rng.randint(1, 4) for _ in range(5))
        if len(sizes) != 5 or any(s < 1 for s in sizes):
            raise ValueError("blownup_c5 needs five positive class sizes")
        graph = _blowup(5, sizes)
    elif spec.kind == "blownup_c7":
        sizes = spec.class_sizes or tuple(rng.randint(1, 3) for _ in range(7))
        if len(sizes) != 7 or any(s < 1 for s in sizes):
            raise ValueError("blownup_c7 needs seven positive class sizes")
        graph = _blowup(7, sizes)
    elif spec.kind == "skeleton_built":
        graph = None
        for _ in range(300):
            candidate = _skeleton_built(rng, spec.scale)
            if check_promise(candidate) is None:
                graph = candidate
                break
        if graph is None:
            raise GenerationError(
                f"skeleton_built seed {spec.seed}: no promise instance "
                f"within the retry budget")
    elif spec.kind == "random_rejection":
        graph = _random_rejection(rng, spec.n or 10,
                                  spec.target_edges, spec.rejection_budget)
    else:
        raise ValueError(f"unknown generator kind {spec.kind!r}")

    if spec.lists == "full":
        masks = [FULL_MASK] * graph.n
    elif spec.lists == "random":
        masks = [_random_mask(rng) for _ in range(graph.n)]
    else:
        raise ValueError(f"unknown lists mode {spec.lists!r}")
    return graph, masks


def _random_mask(rng):
    roll = rng.random()
    if roll < 0.4:
        return FULL_MASK
    if roll < 0.8:
        return FULL_MASK & ~(1 << rng.randrange(3))
    return 1 << rng.randrange(3)


def _blowup(base_len, sizes):
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    edges = []
    for i in range(base_len):
        j = (i + 1) % base_len
        for u in range(offsets[i], offsets[i + 1]):
            for v in range(offsets[j], offsets[j + 1]):
                edges.append((u, v))
    return build_graph(offsets[-1], edges)


_COMPONENT_SHAPES = {
    # shape edges, attachment side, other side (local vertex ids)
    "edge": ([(0, 1)], [0], [1]),
    "path3": ([(0, 1), (1, 2)], [1], [0, 2]),
    "star": ([(0, 1), (0, 2), (0, 3)], [0], [1, 2, 3]),
    "c4": ([(0, 1), (1, 2), (2, 3), (3, 0)], [0, 2], [1, 3]),
}


class _Builder:
    def __init__(self):
        self.edges = [(i, (i + 1) % 5) for i in range(5)]
        self.next_id = 5

    def fresh(self):
        v = self.next_id
        self.next_id += 1
        return v

    def t_member(self, i):
        v = self.fresh()
        self.edges.append((v, (i - 1) % 5))
        self.edges.append((v, (i + 1) % 5))
        return v

    def d_member(self, i):
        v = self.fresh()
        self.edges.append((v, i))
        return v

    def graph(self):
        return build_graph(self.next_id, self.edges)


def _skeleton_built(rng, scale):
    """One instance from a mix of templates the promise class admits.

    Two deep appendages in the wrong relative position stretch into an
    induced P7, so each template populates only sets that coexist: "bare"
    is any T/D population alone; "chained" hangs nested components and W
    vertices off prefixes of a single T set with bare T sets two steps away
    and bare D sets around it; "wpattern" realizes one W attachment pattern
    (single-set prefix, two full non-consecutive D sets, a full D plus a T
    prefix, or a full T plus a T prefix) over a minimal background.
    A caller-side retry guards the construction.
    """
    b = _Builder()
    t_max = max(2, scale // 8)
    d_max = max(1, scale // 12)
    roll = rng.random()

    if roll < 0.25:
        # bare: arbitrary T/D population, nothing hanging
        for i in range(5):
            for _ in range(rng.randint(0, t_max)):
                b.t_member(i)
        for i in range(5):
            for _ in range(rng.randint(0, d_max)):
                b.d_member(i)
        return b.graph()

    if roll < 0.70:
        # chained: nested components and W below one T set
        a = rng.randrange(5)
        t_a = [b.t_member(a) for _ in range(rng.randint(2, t_max + 1))]
        for _ in range(rng.randint(1, 3)):
            shape_edges, side1, _ = _COMPONENT_SHAPES[
                rng.choice(sorted(_COMPONENT_SHAPES))]
            size = 1 + max(max(u, v) for u, v in shape_edges)
            base = b.next_id
            b.next_id += size
            b.edges.extend((base + u, base + v) for u, v in shape_edges)
            prefix = t_a[: rng.randint(1, len(t_a))]
            for local in side1:
                b.edges.extend((base + local, t) for t in prefix)
        for _ in range(rng.randint(0, 2)):
            w = b.fresh()
            b.edges.extend((w, t) for t in t_a[: rng.randint(1, len(t_a))])
        for off in (2, -2):
            for _ in range(rng.randint(0, 2)):
                b.t_member((a + off) % 5)
        for off in (-1, 0, 1):
            for _ in range(rng.randint(0, d_max)):
                b.d_member((a + off) % 5)
        return b.graph()

    # wpattern: one W attachment pattern over its minimal background
    pattern = rng.choice(("t_prefix", "d_prefix", "dd_full", "dt", "tt"))
    if pattern == "t_prefix":
        a = rng.randrange(5)
        t_a = [b.t_member(a) for _ in range(rng.randint(1, t_max + 1))]
        for _ in range(rng.randint(1, 2)):
            w = b.fresh()
            b.edges.extend((w, t) for t in t_a[: rng.randint(1, len(t_a))])
        for off in (2, -2):
            for _ in range(rng.randint(0, 2)):
                b.t_member((a + off) % 5)
        for off in (-1, 0, 1):
            for _ in range(rng.randint(0, d_max)):
                b.d_member((a + off) % 5)
    elif pattern == "d_prefix":
        a = rng.randrange(5)
        d_a = [b.d_member(a) for _ in range(rng.randint(1, d_max + 1))]
        w = b.fresh()
        b.edges.extend((w, d) for d in d_a[: rng.randint(1, len(d_a))])
    elif pattern == "dd_full":
        a = rng.randrange(5)
        c = (a + rng.choice((2, 3))) % 5
        d_a = [b.d_member(a) for _ in range(rng.randint(1, d_max + 1))]
        d_c = [b.d_member(c) for _ in range(rng.randint(1, d_max + 1))]
        w = b.fresh()
        b.edges.extend((w, d) for d in d_a + d_c)
        between = (a + 1) % 5 if c == (a + 2) % 5 else (a + 4) % 5
        for _ in range(rng.randint(0, d_max)):
            b.d_member(between)
    elif pattern == "dt":
        a = rng.randrange(5)
        c = rng.choice([x for x in range(5) if x != a])
        d_a = [b.d_member(a) for _ in range(rng.randint(1, d_max + 1))]
        t_c = [b.t_member(c) for _ in range(rng.randint(1, t_max))]
        w = b.fresh()
        b.edges.extend((w, x) for x in d_a + t_c[: rng.randint(1, len(t_c))])
    else:  # tt
        a = rng.randrange(5)
        c = rng.choice([x for x in range(5) if x != a])
        t_a = [b.t_member(a) for _ in range(rng.randint(1, t_max))]
        t_c = [b.t_member(c) for _ in range(rng.randint(1, t_max))]
        w = b.fresh()
        b.edges.extend((w, x) for x in t_a + t_c[: rng.randint(1, len(t_c))])
    return b.graph()


def _random_rejection(rng, n, target_edges, budget):
    """Triangle-free by incremental insertion, P7-free by rejection."""
    if target_edges is None:
        target_edges = n + 2
    for _ in range(budget):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        bits = [0] * n
        edges = []
        for u, v in pairs:
            if len(edges) >= target_edges:
                break
            if bits[u] & bits[v]:
                continue
            bits[u] |= 1 << v
            bits[v] |= 1 << u
            edges.append((u, v))
        graph = build_graph(n, edges)
        if find_induced_p7(graph) is None:
            return graph
    raise RejectionBudgetExceeded(
        f"no P7-free sample within {budget} attempts (n={n}, m={target_edges})")
