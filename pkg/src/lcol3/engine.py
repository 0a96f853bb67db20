"""Solver engine: anchor-cycle colouring enumeration, the (a)-(h) partial
colouring branches, list propagation, safe-vertex elimination, 2-SAT
residuals, the blown-up-C7 path, and top-level orchestration.
"""

from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .graph import (Bipartition, bipartite_check, connected_components,
                    induced_subgraph, iter_bits)
from .recognition import (STRUCTURE_BREACH, PromiseViolation, check_promise,
                          p7_witness, recognize_blownup_c7, shortest_odd_cycle,
                          triangle_witness)
from .sat2 import TwoSatInstance, add_clause, neg, pos, solve_2sat
from .skeleton import build_chain, build_skeleton

FULL_MASK = 0b111
_COLOUR_OF = [0, 1, 2, 0, 3, 0, 0, 0]  # singleton mask -> colour
_SIZE = [0, 1, 1, 2, 1, 2, 2, 3]


def mask_of(colours):
    m = 0
    for c in colours:
        if c not in (1, 2, 3):
            raise ValueError(f"colour {c} outside {{1,2,3}}")
        m |= 1 << (c - 1)
    return m


def colours_of(mask):
    return tuple(c for c in (1, 2, 3) if mask & (1 << (c - 1)))


def normalize_lists(n, lists):
    """Per-vertex admissible-colour bitmasks from None / masks / iterables."""
    if lists is None:
        return [FULL_MASK] * n
    if len(lists) != n:
        raise ValueError("list count does not match vertex count")
    out = []
    for v, entry in enumerate(lists):
        if isinstance(entry, int):
            m = entry
            if not 0 < m <= FULL_MASK:
                raise ValueError(f"bad colour mask {m} at vertex {v}")
        else:
            m = mask_of(entry)
            if m == 0:
                raise ValueError(f"empty colour list at vertex {v}")
        out.append(m)
    return out


class PreconditionBreach(RuntimeError):
    """A vertex kept all three colours where the structure guarantees it
    cannot; signals a promise violation (or an internal bug)."""


@dataclass
class SolveStats:
    branches: int = 0
    branches_survived: int = 0
    propagations: int = 0
    sat_instances: int = 0
    fallback_used: int = 0
    millis: float = 0.0


@dataclass
class Outcome:
    kind: str  # "sat" | "unsat" | "invalid"
    colouring: list | None
    violation: PromiseViolation | None
    stats: SolveStats

    @property
    def is_sat(self):
        return self.kind == "sat"

    @property
    def is_unsat(self):
        return self.kind == "unsat"

    @property
    def is_invalid(self):
        return self.kind == "invalid"


class ListState:
    """Mutable per-branch colouring state: masks, assignments and a pending
    queue of freshly forced vertices awaiting propagation.

    The optional trail logs every colour removal as (vertex, colour, cause)
    with cause -1 for direct assignments; replaying it over the initial
    masks reproduces the final masks.
    """

    __slots__ = ("graph", "masks", "assigned", "pending", "trail", "removals")

    def __init__(self, graph, masks, trail=False):
        self.graph = graph
        self.masks = list(masks)
        self.assigned = [0] * graph.n
        self.pending = deque()
        self.trail = [] if trail else None
        self.removals = 0
        for v, m in enumerate(self.masks):
            if not 0 < m <= FULL_MASK:
                raise ValueError(f"bad colour mask {m} at vertex {v}")
            if _SIZE[m] == 1:
                self.assigned[v] = _COLOUR_OF[m]
                self.pending.append(v)

    def copy(self):
        assert not self.pending, "copy only at a propagation fixpoint"
        new = object.__new__(ListState)
        new.graph = self.graph
        new.masks = self.masks.copy()
        new.assigned = self.assigned.copy()
        new.pending = deque()
        new.trail = [] if self.trail is not None else None
        new.removals = 0
        return new

    def assign(self, v, colour):
        """Force a colour; False if it is not admissible any more."""
        cbit = 1 << (colour - 1)
        m = self.masks[v]
        if not m & cbit:
            return False
        if m != cbit:
            self.removals += _SIZE[m] - 1
            if self.trail is not None:
                for c in colours_of(m & ~cbit):
                    self.trail.append((v, c, -1))
            self.masks[v] = cbit
        if self.assigned[v] == 0:
            self.assigned[v] = colour
            self.pending.append(v)
        return True

    def full_mask_vertices(self):
        return [v for v in range(self.graph.n)
                if self.assigned[v] == 0 and self.masks[v] == FULL_MASK]


def propagate(st):
    """Run singleton propagation to a fixpoint; None on an emptied mask or
    two adjacent vertices forced to the same colour."""
    masks = st.masks
    assigned = st.assigned
    pending = st.pending
    adj = st.graph.adj
    trail = st.trail
    while pending:
        v = pending.popleft()
        cbit = masks[v]
        colour = _COLOUR_OF[cbit]
        for u in adj[v]:
            mu = masks[u]
            if mu & cbit:
                if mu == cbit:
                    return None
                mu &= ~cbit
                masks[u] = mu
                st.removals += 1
                if trail is not None:
                    trail.append((u, colour, v))
                if _SIZE[mu] == 1:
                    assigned[u] = _COLOUR_OF[mu]
                    pending.append(u)
    return st


def eliminate_safe(st, graph, debug=False):
    """Assign every full-mask vertex whose neighbours all miss a common
    colour (the smallest such); isolated full-mask vertices get colour 1.

    Runs in one pass: a safe assignment cannot shrink any neighbour's mask,
    since the neighbours already miss the assigned colour.  With debug=True
    a second pass asserts the pass was idempotent.
    """
    masks = st.masks
    out = []
    for v in range(graph.n):
        if st.assigned[v] != 0 or masks[v] != FULL_MASK:
            continue
        nbrs = graph.adj[v]
        if not nbrs:
            st.assign(v, 1)
            out.append((v, 1))
            continue
        acc = FULL_MASK
        for u in nbrs:
            acc &= FULL_MASK & ~masks[u]
            if not acc:
                break
        if acc:
            j = _COLOUR_OF[acc & -acc]
            st.assign(v, j)
            out.append((v, j))
    if debug:
        again = eliminate_safe(st, graph)
        assert not again, f"safe elimination not idempotent: {again}"
    return out


def residual_to_2sat(st, graph):
    """2-SAT encoding of the remaining two-colour choices.

    One variable per unassigned vertex, true iff it takes the smaller colour
    of its mask; each edge contributes one clause per colour admissible at
    both ends.  Raises PreconditionBreach if a three-colour vertex remains.
    """
    masks = st.masks
    var_of = {}
    var_info = []
    for v in range(graph.n):
        if st.assigned[v] != 0:
            continue
        m = masks[v]
        if _SIZE[m] == 3:
            raise PreconditionBreach(f"vertex {v} still has all three colours")
        lo, hi = colours_of(m)
        var_of[v] = len(var_info)
        var_info.append((v, lo, hi))

    inst = TwoSatInstance(len(var_info))
    for u in range(graph.n):
        for v in graph.adj[u]:
            if v < u:
                continue
            iu = var_of.get(u)
            iv = var_of.get(v)
            if iu is None and iv is None:
                continue
            if iu is None or iv is None:
                # propagation already removed the assigned endpoint's colour
                a, b = (u, v) if iu is None else (v, u)
                assert masks[b] & masks[a] == 0
                continue
            common = masks[u] & masks[v]
            for cbit in (1, 2, 4):
                if common & cbit:
                    c = _COLOUR_OF[cbit]
                    lit_u = pos(iu) if c == var_info[iu][1] else neg(iu)
                    lit_v = pos(iv) if c == var_info[iv][1] else neg(iv)
                    add_clause(inst, lit_u ^ 1, lit_v ^ 1)
    return inst, var_info


def verify_colouring(graph, lists, colouring):
    """True iff the colouring is total, list-respecting and proper."""
    masks = normalize_lists(graph.n, lists)
    if len(colouring) != graph.n:
        return False
    for v in range(graph.n):
        c = colouring[v]
        if c not in (1, 2, 3) or not masks[v] & (1 << (c - 1)):
            return False
    for u in range(graph.n):
        cu = colouring[u]
        for v in graph.adj[u]:
            if v > u and colouring[v] == cu:
                return False
    return True


# ---------------------------------------------------------------------------
# anchor-cycle colourings and the (a)-(h) case machinery


def enumerate_c5_colourings(anchor_masks):
    """All proper colourings of the 5-cycle consistent with the anchors'
    lists, in lexicographic order."""
    if len(anchor_masks) != 5:
        raise ValueError("expected five anchor masks")
    options = [colours_of(m) for m in anchor_masks]
    out = []
    for c1 in options[0]:
        for c2 in options[1]:
            if c2 == c1:
                continue
            for c3 in options[2]:
                if c3 == c2:
                    continue
                for c4 in options[3]:
                    if c4 == c3:
                        continue
                    for c5 in options[4]:
                        if c5 == c4 or c5 == c1:
                            continue
                        out.append((c1, c2, c3, c4, c5))
    return out


@dataclass(frozen=True)
class Palette:
    """Colour consequences of one anchor-cycle colouring.

    Three T sets are forced, the two consecutive ones flanking the once-used
    colour q keep two options {q, other}; every D set keeps the two colours
    its anchor does not use; the three free D indices around q's position
    get the (e)-(h) case treatment.
    """

    c5_colouring: tuple
    forced: dict
    options: dict
    undetermined: tuple
    q: int
    d_options: dict
    free_d: tuple


def palette_analysis(c5col):
    c5col = tuple(c5col)
    counts = {c: c5col.count(c) for c in (1, 2, 3)}
    once = [c for c, k in counts.items() if k == 1]
    assert len(once) == 1, "proper C5 3-colouring uses one colour exactly once"
    q = once[0]
    p = c5col.index(q)

    forced = {}
    options = {}
    for i in range(5):
        a, b = c5col[(i - 1) % 5], c5col[(i + 1) % 5]
        if a != b:
            forced[i] = 6 - a - b
        else:
            options[i] = (q, 6 - q - a)
    undetermined = tuple(sorted(((p + 2) % 5, (p + 3) % 5)))
    assert tuple(sorted(options)) == undetermined
    d_options = {i: tuple(sorted({1, 2, 3} - {c5col[i]})) for i in range(5)}
    free_d = tuple(sorted(((p - 1) % 5, p, (p + 1) % 5)))
    return Palette(c5col, forced, options, undetermined, q, d_options, free_d)


@dataclass(frozen=True)
class TCase:
    """One of the cases (a)-(d) on an undetermined T index.

    (a): the level-k prefix takes the non-shared colour and witness w takes
    q; (b): the same swapped; (c)/(d): all of T_i takes the non-shared
    colour / q.  Tags c and d carry no (k, w)."""

    index: int
    tag: str
    k: int | None = None
    w: int | None = None


@dataclass(frozen=True)
class DCase:
    """One of the cases (e)-(h) on a free D index with options {a, b}:
    (e) v_i -> a with witness v' -> b, (f) swapped, (g)/(h) whole-set."""

    index: int
    tag: str
    a: int
    b: int
    v: int
    vprime: int | None = None


@dataclass(frozen=True)
class BranchDescriptor:
    c5_colouring: tuple
    t_cases: tuple
    d_cases: tuple


def t_case_choices(palette, chains, i):
    chain = chains.get(i)
    if chain is None:
        return [None]
    choices = [TCase(i, "c"), TCase(i, "d")]
    levels = chain.levels
    for k in range(chain.r + 1):
        fresh = levels[k + 1].mask & ~levels[k].mask
        for w in iter_bits(fresh):
            choices.append(TCase(i, "a", k, w))
    for k in range(chain.r + 1):
        fresh = levels[k + 1].mask & ~levels[k].mask
        for w in iter_bits(fresh):
            choices.append(TCase(i, "b", k, w))
    return choices


def d_case_choices(sk, palette, i):
    d_set = sk.d[i]
    if not d_set:
        return [None]
    a, b = palette.d_options[i]
    v = d_set.min()
    choices = [DCase(i, "g", a, b, v), DCase(i, "h", a, b, v)]
    rest = [u for u in d_set if u != v]
    for u in rest:
        choices.append(DCase(i, "e", a, b, v, u))
    for u in rest:
        choices.append(DCase(i, "f", a, b, v, u))
    return choices


def enumerate_branches(sk, chains, c5col):
    """Lazy ordered stream of all branch descriptors for one anchor
    colouring: case tags (c, d, a, b) with k then w ascending on each
    undetermined T index, tags (g, h, e, f) with v' ascending on each free
    D index, combined as a Cartesian product."""
    palette = palette_analysis(c5col)
    for i in palette.undetermined:
        if bool(sk.t[i]) != (i in chains):
            raise ValueError(f"chain missing or spurious for T index {i}")
    ia, ib = palette.undetermined
    ta = t_case_choices(palette, chains, ia)
    tb = t_case_choices(palette, chains, ib)
    ds = [d_case_choices(sk, palette, i) for i in palette.free_d]
    for ca in ta:
        for cb in tb:
            for d1 in ds[0]:
                for d2 in ds[1]:
                    for d3 in ds[2]:
                        yield BranchDescriptor(tuple(c5col), (ca, cb), (d1, d2, d3))


def _t_case_seeds(sk, palette, chains, case):
    i = case.index
    q = palette.q
    other = palette.options[i][1]
    if case.tag == "c":
        return [(v, other) for v in sk.t[i]]
    if case.tag == "d":
        return [(v, q) for v in sk.t[i]]
    level = chains[i].levels[case.k]
    first = other if case.tag == "a" else q
    second = q if case.tag == "a" else other
    seeds = [(v, first) for v in level]
    seeds.append((case.w, second))
    return seeds


def _d_case_seeds(sk, case):
    i = case.index
    if case.tag == "g":
        return [(v, case.a) for v in sk.d[i]]
    if case.tag == "h":
        return [(v, case.b) for v in sk.d[i]]
    if case.tag == "e":
        return [(case.v, case.a), (case.vprime, case.b)]
    return [(case.v, case.b), (case.vprime, case.a)]


def branch_seeds(sk, chains, desc):
    """Complete seed assignment of a branch: anchors, forced T sets, and the
    case-specific choices."""
    palette = palette_analysis(desc.c5_colouring)
    seeds = [(sk.c[i], desc.c5_colouring[i]) for i in range(5)]
    for i, colour in sorted(palette.forced.items()):
        seeds.extend((v, colour) for v in sk.t[i])
    for case in desc.t_cases:
        if case is not None:
            seeds.extend(_t_case_seeds(sk, palette, chains, case))
    for case in desc.d_cases:
        if case is not None:
            seeds.extend(_d_case_seeds(sk, case))
    return seeds


def apply_branch(st, desc, sk, chains):
    """Seed a branch's assignments into the state; None on a conflict with
    the current masks."""
    for v, colour in branch_seeds(sk, chains, desc):
        if not st.assign(v, colour):
            return None
    return st


# ---------------------------------------------------------------------------
# blown-up C7


def colour_blownup_c7(dec, lists):
    """List-colour a blown-up C7 by dynamic programming over per-class
    colour subsets; consecutive classes must use disjoint subsets and every
    member's list must meet its class subset.  None iff infeasible."""
    classes = dec.classes
    n = sum(len(cl) for cl in classes)
    masks = normalize_lists(n, lists)
    feasible = []
    for cl in classes:
        ok = [m for m in range(1, 8)
              if all(masks[v] & m for v in cl)]
        if not ok:
            return None
        feasible.append(ok)

    chosen = [0] * 7

    def rec(idx):
        for m in feasible[idx]:
            if idx > 0 and m & chosen[idx - 1]:
                continue
            if idx == 6 and m & chosen[0]:
                continue
            chosen[idx] = m
            if idx == 6 or rec(idx + 1):
                return True
        chosen[idx] = 0
        return False

    if not rec(0):
        return None
    colouring = [0] * n
    for idx, cl in enumerate(classes):
        for v in cl:
            pick = masks[v] & chosen[idx]
            colouring[v] = _COLOUR_OF[pick & -pick]
    return colouring


# ---------------------------------------------------------------------------
# top-level solve


def solve(graph, lists=None, mode="trust", parallel=1, trail=False):
    """Decide list 3-colourability and produce a colouring, an
    uncolourability verdict, or a promise-violation witness.

    In "verify" mode the promise (no triangles, no induced P7) is checked
    up front; in "trust" mode only violations met on the solving path are
    reported.  Identical inputs give identical outputs for any `parallel`.
    """
    if mode not in ("trust", "verify"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    stats = SolveStats()
    masks = normalize_lists(graph.n, lists)

    if mode == "verify":
        violation = check_promise(graph)
        if violation is not None:
            stats.millis = (time.perf_counter() - t0) * 1000.0
            return Outcome("invalid", None, violation, stats)

    colouring = [0] * graph.n
    for comp in connected_components(graph):
        if len(comp) == graph.n:
            sub, ids = graph, range(graph.n)
        else:
            sub, ids = induced_subgraph(graph, comp)
        sub_masks = [masks[v] for v in ids]
        result = _solve_component(sub, sub_masks, stats, parallel, trail)
        if isinstance(result, PromiseViolation):
            stats.millis = (time.perf_counter() - t0) * 1000.0
            return Outcome("invalid", None, result.relabel(list(ids)), stats)
        if result is None:
            stats.millis = (time.perf_counter() - t0) * 1000.0
            return Outcome("unsat", None, None, stats)
        for local, v in enumerate(ids):
            colouring[v] = result[local]

    assert verify_colouring(graph, masks, colouring)
    stats.millis = (time.perf_counter() - t0) * 1000.0
    return Outcome("sat", colouring, None, stats)


def _solve_component(g, masks, stats, parallel, trail):
    bip = bipartite_check(g)
    if isinstance(bip, Bipartition):
        return _solve_bipartite(g, masks, bip, stats, parallel, trail)

    cycle = shortest_odd_cycle(g)
    length = len(cycle)
    if length == 3:
        return triangle_witness(g, *cycle)
    if length >= 9:
        return p7_witness(g, cycle[:7], "odd girth at least nine")
    if length == 7:
        dec = recognize_blownup_c7(g, cycle)
        if isinstance(dec, PromiseViolation):
            return dec
        return colour_blownup_c7(dec, masks)
    sk = build_skeleton(g, cycle)
    if isinstance(sk, PromiseViolation):
        return sk
    return _solve_skeleton(g, masks, sk, stats, parallel, trail)


def _solve_bipartite(g, masks, bip, stats, parallel, trail):
    if all(m == FULL_MASK for m in masks):
        colouring = [0] * g.n
        for v in bip.a:
            colouring[v] = 1
        for v in bip.b:
            colouring[v] = 2
        return colouring

    st = ListState(g, masks, trail)
    if propagate(st) is None:
        stats.propagations += st.removals
        return None
    stats.propagations += st.removals
    st.removals = 0
    if not st.full_mask_vertices():
        return _two_sat_leaf(g, st, stats)
    stats.fallback_used += 1
    return _bipartite_fallback(g, st, stats)


def _bipartite_fallback(g, st, stats):
    # Exponential worst case; only reachable for bipartite components with
    # constrained lists, outside the polynomial solving path.
    full = st.full_mask_vertices()
    if not full:
        return _two_sat_leaf(g, st, stats)
    v = full[0]
    for colour in (1, 2, 3):
        st2 = st.copy()
        st2.assign(v, colour)
        ok = propagate(st2) is not None
        stats.propagations += st2.removals
        st2.removals = 0
        if not ok:
            continue
        result = _bipartite_fallback(g, st2, stats)
        if result is not None:
            return result
    return None


def _two_sat_leaf(g, st, stats):
    inst, var_info = residual_to_2sat(st, g)
    stats.sat_instances += 1
    solution = solve_2sat(inst)
    if solution is None:
        return None
    colouring = list(st.assigned)
    for idx, (v, lo, hi) in enumerate(var_info):
        colouring[v] = lo if solution[idx] else hi
    return colouring


def _leaf_job(g, st):
    """Finish one branch: safe elimination, the no-full-mask assertion, and
    the 2-SAT residual.  Returns (tag, payload, removals, sat_count)."""
    eliminate_safe(st, g)
    if propagate(st) is None:
        return ("fail", None, st.removals, 0)
    full = st.full_mask_vertices()
    if full:
        violation = PromiseViolation(
            STRUCTURE_BREACH, tuple(full),
            "vertex kept all three colours after safe elimination")
        return ("breach", violation, st.removals, 0)
    try:
        inst, var_info = residual_to_2sat(st, g)
    except PreconditionBreach as exc:
        return ("breach",
                PromiseViolation(STRUCTURE_BREACH, (), str(exc)),
                st.removals, 0)
    solution = solve_2sat(inst)
    if solution is None:
        return ("unsat", None, st.removals, 1)
    colouring = list(st.assigned)
    for idx, (v, lo, hi) in enumerate(var_info):
        colouring[v] = lo if solution[idx] else hi
    return ("sat", colouring, st.removals, 1)


def _solve_skeleton(g, masks, sk, stats, parallel, trail):
    chains = {}
    anchor_masks = [masks[c] for c in sk.c]
    for c5col in enumerate_c5_colourings(anchor_masks):
        palette = palette_analysis(c5col)
        for i in palette.undetermined:
            if sk.t[i] and i not in chains:
                chain = build_chain(g, sk, i)
                if isinstance(chain, PromiseViolation):
                    return chain
                chains[i] = chain

        ta = t_case_choices(palette, chains, palette.undetermined[0])
        tb = t_case_choices(palette, chains, palette.undetermined[1])
        ds = [d_case_choices(sk, palette, i) for i in palette.free_d]
        choice_lists = [ta, tb] + ds
        suffix = [1] * (len(choice_lists) + 1)
        for idx in range(len(choice_lists) - 1, -1, -1):
            suffix[idx] = suffix[idx + 1] * len(choice_lists[idx])

        base = ListState(g, masks, trail)
        ok = True
        for i in range(5):
            if not base.assign(sk.c[i], c5col[i]):
                ok = False
                break
        if ok:
            for i, colour in palette.forced.items():
                for v in sk.t[i]:
                    if not base.assign(v, colour):
                        ok = False
                        break
                if not ok:
                    break
        if ok and propagate(base) is None:
            ok = False
        stats.propagations += base.removals
        base.removals = 0
        if not ok:
            stats.branches += suffix[0]
            continue

        def seeds_of(choice):
            if isinstance(choice, TCase):
                return _t_case_seeds(sk, palette, chains, choice)
            return _d_case_seeds(sk, choice)

        result = _consume_leaves(
            g, stats, parallel,
            _leaf_stream(base, choice_lists, seeds_of, suffix))
        if result is not None:
            return result
    return None


def _leaf_stream(base, choice_lists, seeds_of, suffix):
    """Yield ("leaf", state, pruned_branches, removals) events for every
    surviving seed combination, in enumeration order, followed by one
    ("end", None, pruned_branches, removals) event."""
    pending = [0, 0]  # branches skipped, removals accrued since last leaf

    def rec(state, idx):
        if idx == len(choice_lists):
            yield state
            return
        choices = choice_lists[idx]
        if len(choices) == 1 and choices[0] is None:
            yield from rec(state, idx + 1)
            return
        for choice in choices:
            st2 = state.copy()
            ok = True
            for v, colour in seeds_of(choice):
                if not st2.assign(v, colour):
                    ok = False
                    break
            if ok and propagate(st2) is None:
                ok = False
            pending[1] += st2.removals
            st2.removals = 0
            if not ok:
                pending[0] += suffix[idx + 1]
                continue
            yield from rec(st2, idx + 1)

    for leaf in rec(base, 0):
        b, p = pending
        pending[0] = pending[1] = 0
        yield ("leaf", leaf, b, p)
    yield ("end", None, pending[0], pending[1])


def _consume_leaves(g, stats, parallel, stream):
    """Evaluate leaves in order with first-success semantics; stats reflect
    the sequential prefix up to the successful leaf regardless of any
    parallel overshoot."""
    if parallel <= 1:
        for kind, st, pruned, removals in stream:
            stats.branches += pruned
            stats.propagations += removals
            if kind == "end":
                break
            stats.branches += 1
            outcome = _apply_leaf_result(stats, _leaf_job(g, st))
            if outcome is not None:
                return outcome
        return None

    with ThreadPoolExecutor(max_workers=parallel) as pool:
        events = iter(stream)
        done = False
        while not done:
            chunk = []
            for event in events:
                chunk.append(event)
                if event[0] == "end" or len(chunk) >= parallel:
                    break
            if not chunk:
                break
            jobs = {}
            for idx, event in enumerate(chunk):
                if event[0] == "leaf":
                    jobs[idx] = pool.submit(_leaf_job, g, event[1])
            for idx, event in enumerate(chunk):
                kind, _, pruned, removals = event
                stats.branches += pruned
                stats.propagations += removals
                if kind == "end":
                    done = True
                    break
                stats.branches += 1
                outcome = _apply_leaf_result(stats, jobs[idx].result())
                if outcome is not None:
                    return outcome
    return None


def _apply_leaf_result(stats, result):
    tag, payload, removals, sat_count = result
    stats.propagations += removals
    stats.sat_instances += sat_count
    if sat_count:
        stats.branches_survived += 1
    if tag == "sat" or tag == "breach":
        return payload
    return None
